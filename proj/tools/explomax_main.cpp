// explomax command-line tool: fit, predict and simulate for the
// exponential-Lomax mixture under type-I right censoring.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "explomax/bayes.hpp"
#include "explomax/distributions.hpp"
#include "explomax/importance.hpp"
#include "explomax/likelihood.hpp"
#include "explomax/predictive.hpp"
#include "explomax/simulation.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;   // malformed data or configuration
constexpr int kExitDomain = 3;  // estimator precondition failure

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// CSV with header "time,component"; n and T come from flags because censored
// units have no rows.
explomax::CensoredSample read_data_file(const std::string& path, int n, double censor_time) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file: " + path);
    explomax::CensoredSample sample;
    sample.n = n;
    sample.censor_time = censor_time;

    std::string line;
    int row = 0;
    if (!std::getline(in, line)) throw InputError(path + ": empty file");
    ++row;
    {
        std::string header = trim(line);
        header.erase(std::remove_if(header.begin(), header.end(), ::isspace), header.end());
        if (header != "time,component")
            throw InputError(path + ": row 1: header must be 'time,component'");
    }
    while (std::getline(in, line)) {
        ++row;
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto comma = body.find(',');
        if (comma == std::string::npos)
            throw InputError(path + ": row " + std::to_string(row) + ": expected 'time,component'");
        double t = 0.0;
        int comp = 0;
        try {
            std::size_t used = 0;
            t = std::stod(trim(body.substr(0, comma)), &used);
            comp = std::stoi(trim(body.substr(comma + 1)));
        } catch (const std::exception&) {
            throw InputError(path + ": row " + std::to_string(row) + ": malformed values");
        }
        if (comp != 1 && comp != 2)
            throw InputError(path + ": row " + std::to_string(row) + ": component must be 1 or 2");
        if (!(t > 0.0 && t <= censor_time))
            throw InputError(path + ": row " + std::to_string(row) +
                             ": time must lie in (0, T]");
        (comp == 1 ? sample.obs1 : sample.obs2).push_back(t);
        if (sample.r() > n)
            throw InputError(path + ": row " + std::to_string(row) +
                             ": more rows than units on test (n = " + std::to_string(n) + ")");
    }
    return sample;
}

explomax::Prior parse_prior(const std::string& s) {
    if (s == "uniform") return explomax::Prior::uniform;
    if (s == "jeffreys") return explomax::Prior::jeffreys;
    throw InputError("prior must be 'uniform' or 'jeffreys'");
}

void emit(const ordered_json& j, const std::string& format) {
    if (format == "json") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    // table: flat two-column rendering of the same content
    std::function<void(const ordered_json&, std::string)> walk =
        [&](const ordered_json& node, std::string prefix) {
            for (const auto& [key, val] : node.items()) {
                const std::string name = prefix.empty() ? key : prefix + "." + key;
                if (val.is_object()) {
                    walk(val, name);
                } else {
                    std::cout << std::left << std::setw(34) << name << " " << val.dump()
                              << "\n";
                }
            }
        };
    walk(j, "");
}

struct FitOptions {
    std::string input;
    int n = 0;
    double censor_time = 0.0;
    double delta = 0.0;
    std::string method = "ml";
    std::string prior = "uniform";
    std::string loss = "self";
    double c = 1.2;
    int is_samples = 1000;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string format = "json";
    std::vector<double> truth;
    double alpha = 0.01;  // predict only
};

ordered_json config_json(const FitOptions& opt, bool with_alpha) {
    ordered_json cfg{{"input", opt.input},
                     {"n", opt.n},
                     {"censor_time", opt.censor_time},
                     {"delta", opt.delta},
                     {"method", opt.method}};
    if (opt.method != "ml") {
        cfg["prior"] = opt.prior;
        cfg["loss"] = opt.loss;
        if (opt.loss == "gelf") cfg["c"] = opt.c;
    }
    if (opt.method == "is") {
        cfg["is_samples"] = opt.is_samples;
        cfg["seed"] = opt.seed;
    }
    if (with_alpha) cfg["alpha"] = opt.alpha;
    return cfg;
}

int run_fit(const FitOptions& opt) {
    const explomax::CensoredSample sample = read_data_file(opt.input, opt.n, opt.censor_time);
    explomax::LossSpec loss = explomax::LossSpec::self();
    if (opt.loss == "gelf") loss = explomax::LossSpec::gelf(opt.c);

    ordered_json out;
    out["config"] = config_json(opt, false);
    explomax::ParamEstimates est;
    ordered_json uncertainty, diagnostics;

    if (opt.method == "ml") {
        const explomax::FitResult fit = explomax::ml_fit(sample, opt.delta);
        est = {fit.params.theta1, fit.params.theta2, fit.params.p};
        const auto var = explomax::ml_variances(fit.params, sample);
        uncertainty["variance"] = {{"theta1", var[0]}, {"theta2", var[1]}, {"p", var[2]}};
        diagnostics["gradient_norm"] = fit.report.grad_norm;
        diagnostics["iterations"] = fit.report.iterations;
        diagnostics["information_positive_definite"] =
            fit.report.information_positive_definite;
    } else if (opt.method == "bayes") {
        const auto expansion =
            explomax::build_expansion(sample, opt.delta, parse_prior(opt.prior));
        est = loss.is_self() ? explomax::bayes_self(expansion)
                             : explomax::bayes_gelf(expansion, loss.c);
        const auto var = explomax::posterior_variance(expansion);
        uncertainty["posterior_variance"] = {
            {"theta1", var[0]}, {"theta2", var[1]}, {"p", var[2]}};
    } else if (opt.method == "is") {
        if (!opt.seed_set) throw InputError("--seed is required for --method is");
        explomax::RandomStream rng(opt.seed);
        const auto draws = explomax::is_draws(sample, opt.delta, parse_prior(opt.prior),
                                              opt.is_samples, rng);
        est = explomax::is_estimate(draws, loss);
        const double ess = explomax::effective_sample_size(draws);
        uncertainty["ess"] = ess;
        diagnostics["ess"] = ess;
    } else {
        throw InputError("method must be 'ml', 'bayes' or 'is'");
    }

    out["estimates"] = {{"theta1", est.theta1}, {"theta2", est.theta2}, {"p", est.p}};
    out["uncertainty"] = uncertainty;
    if (diagnostics.is_null()) diagnostics = ordered_json::object();
    if (!opt.truth.empty()) {
        const explomax::LossSpec risk_loss = loss;
        out["risks"] = {{"theta1", explomax::loss_value(risk_loss, est.theta1, opt.truth[0])},
                        {"theta2", explomax::loss_value(risk_loss, est.theta2, opt.truth[1])},
                        {"p", explomax::loss_value(risk_loss, est.p, opt.truth[2])}};
    }
    out["diagnostics"] = diagnostics;
    emit(out, opt.format);
    return kExitOk;
}

int run_predict(const FitOptions& opt) {
    const explomax::CensoredSample sample = read_data_file(opt.input, opt.n, opt.censor_time);
    const auto expansion = explomax::build_expansion(sample, opt.delta, parse_prior(opt.prior));
    const explomax::PredictiveSummary s = explomax::predictive_interval(expansion, opt.alpha);
    ordered_json out;
    out["config"] = ordered_json{{"input", opt.input},       {"n", opt.n},
                                 {"censor_time", opt.censor_time}, {"delta", opt.delta},
                                 {"prior", opt.prior},       {"alpha", opt.alpha}};
    out["predictive"] = {{"median", s.median},
                         {"lower", s.lower},
                         {"upper", s.upper},
                         {"alpha", s.alpha},
                         {"prior", to_string(s.prior)}};
    emit(out, opt.format);
    return kExitOk;
}

struct SimulateOptions {
    int n = 0;
    double censor_time = 0.0;
    double theta1 = 0.0, theta2 = 0.0, p = 0.0, delta = 0.0;
    int reps = 1;
    std::uint64_t seed = 0;
    std::string methods = "ml,bayes:uniform:self";
    std::vector<double> c_values{1.2, -1.2};
    int is_samples = 1000;
    std::string allocation = "proportional";
    std::string format = "json";
    int threads = 1;
    bool timing = false;
};

// Method tokens: "ml" or "method:prior:loss" with method in {bayes, is},
// prior in {uniform, jeffreys}, loss in {self, gelf}. A gelf token expands
// across every --c value.
std::vector<explomax::EstimatorSpec> parse_methods(const std::string& tokens,
                                                   const std::vector<double>& c_values) {
    std::vector<explomax::EstimatorSpec> specs;
    std::stringstream ss(tokens);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        std::vector<std::string> parts;
        std::stringstream ts(tok);
        std::string part;
        while (std::getline(ts, part, ':')) parts.push_back(trim(part));
        explomax::EstimatorSpec spec;
        if (parts[0] == "ml") {
            if (parts.size() != 1) throw InputError("ml method takes no prior or loss");
            specs.push_back(spec);
            continue;
        }
        if (parts[0] == "bayes")
            spec.method = explomax::Method::bayes_closed;
        else if (parts[0] == "is")
            spec.method = explomax::Method::bayes_is;
        else
            throw InputError("unknown method token: " + parts[0]);
        spec.prior = parse_prior(parts.size() > 1 ? parts[1] : "uniform");
        const std::string loss = parts.size() > 2 ? parts[2] : "self";
        if (loss == "self") {
            spec.loss = explomax::LossSpec::self();
            specs.push_back(spec);
        } else if (loss == "gelf") {
            if (c_values.empty()) throw InputError("gelf methods need at least one --c value");
            for (double c : c_values) {
                spec.loss = explomax::LossSpec::gelf(c);
                specs.push_back(spec);
            }
        } else {
            throw InputError("loss must be 'self' or 'gelf'");
        }
    }
    if (specs.empty()) throw InputError("--methods produced no estimators");
    return specs;
}

int run_simulate(const SimulateOptions& opt) {
    explomax::StudyConfig cfg;
    cfg.true_params = {opt.theta1, opt.theta2, opt.p, opt.delta};
    cfg.n = opt.n;
    cfg.censor_time = opt.censor_time;
    cfg.reps = opt.reps;
    cfg.seed = opt.seed;
    cfg.is_samples = opt.is_samples;
    if (opt.allocation == "proportional")
        cfg.allocation = explomax::Allocation::proportional;
    else if (opt.allocation == "bernoulli")
        cfg.allocation = explomax::Allocation::bernoulli;
    else
        throw InputError("allocation must be 'proportional' or 'bernoulli'");
    cfg.estimators = parse_methods(opt.methods, opt.c_values);

    try {
        cfg.validate();
    } catch (const std::invalid_argument& err) {
        throw InputError(err.what());
    } catch (const std::domain_error& err) {
        throw InputError(err.what());
    }

    const explomax::StudyReport report = explomax::run_study(cfg, opt.threads);
    if (opt.format == "json")
        std::cout << report.to_json(opt.timing) << "\n";
    else
        std::cout << report.to_table();
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exponential-Lomax mixture estimation under type-I right censoring"};
    app.require_subcommand(1);

    FitOptions fit_opt, pred_opt;
    SimulateOptions sim_opt;

    const auto add_data_flags = [](CLI::App* cmd, FitOptions& o) {
        cmd->add_option("--input", o.input, "CSV file: header 'time,component'")->required();
        cmd->add_option("--n", o.n, "total units on test")->required();
        cmd->add_option("--censor-time", o.censor_time, "censoring time T")->required();
        cmd->add_option("--delta", o.delta, "known Lomax scale delta")->required();
        cmd->add_option("--format", o.format, "json|table")
            ->check(CLI::IsMember({"json", "table"}));
    };

    CLI::App* fit = app.add_subcommand("fit", "point estimates for one data set");
    add_data_flags(fit, fit_opt);
    fit->add_option("--method", fit_opt.method, "ml|bayes|is")
        ->check(CLI::IsMember({"ml", "bayes", "is"}));
    fit->add_option("--prior", fit_opt.prior, "uniform|jeffreys")
        ->check(CLI::IsMember({"uniform", "jeffreys"}));
    fit->add_option("--loss", fit_opt.loss, "self|gelf")
        ->check(CLI::IsMember({"self", "gelf"}));
    fit->add_option("--c", fit_opt.c, "GELF asymmetry constant (nonzero)");
    fit->add_option("--is-samples", fit_opt.is_samples, "importance-sampling draw count");
    fit->add_option("--seed", fit_opt.seed, "random seed (required for --method is)")
        ->each([&](const std::string&) { fit_opt.seed_set = true; });
    fit->add_option("--truth", fit_opt.truth,
                    "true theta1 theta2 p; adds per-parameter loss to the report")
        ->expected(3);

    CLI::App* predict = app.add_subcommand("predict", "predictive median and interval");
    add_data_flags(predict, pred_opt);
    predict->add_option("--prior", pred_opt.prior, "uniform|jeffreys")
        ->check(CLI::IsMember({"uniform", "jeffreys"}));
    predict->add_option("--alpha", pred_opt.alpha, "interval level, in (0, 1); default 0.01");

    CLI::App* simulate = app.add_subcommand("simulate", "Monte-Carlo estimator risk study");
    simulate->add_option("--n", sim_opt.n, "units per replication")->required();
    simulate->add_option("--censor-time", sim_opt.censor_time, "censoring time T")->required();
    simulate->add_option("--theta1", sim_opt.theta1, "true exponential rate")->required();
    simulate->add_option("--theta2", sim_opt.theta2, "true Lomax shape")->required();
    simulate->add_option("--p", sim_opt.p, "true mixing proportion")->required();
    simulate->add_option("--delta", sim_opt.delta, "known Lomax scale")->required();
    simulate->add_option("--reps", sim_opt.reps, "replication count")->required();
    simulate->add_option("--seed", sim_opt.seed, "master seed")->required();
    simulate->add_option("--methods", sim_opt.methods,
                         "comma list of ml | bayes:prior:loss | is:prior:loss");
    simulate->add_option("--c", sim_opt.c_values, "GELF c values for gelf methods")
        ->delimiter(',');
    simulate->add_option("--is-samples", sim_opt.is_samples, "IS draw count per replication");
    simulate->add_option("--allocation", sim_opt.allocation, "proportional|bernoulli")
        ->check(CLI::IsMember({"proportional", "bernoulli"}));
    simulate->add_option("--format", sim_opt.format, "json|table")
        ->check(CLI::IsMember({"json", "table"}));
    simulate->add_option("--threads", sim_opt.threads, "worker threads (default 1)");
    simulate->add_flag("--timing", sim_opt.timing, "include wall time in the JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInput;
    }

    try {
        if (fit->parsed()) return run_fit(fit_opt);
        if (predict->parsed()) {
            if (!(pred_opt.alpha > 0.0 && pred_opt.alpha < 1.0))
                throw InputError("--alpha must lie in the open interval (0, 1)");
            return run_predict(pred_opt);
        }
        return run_simulate(sim_opt);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const explomax::InvalidLoss& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const explomax::NonConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::runtime_error& e) {
        // module domain errors: NoFailures, ImproperPosterior, GelfDomainError, ...
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
}

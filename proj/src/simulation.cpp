#include "explomax/simulation.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <thread>

#include "explomax/distributions.hpp"
#include "explomax/importance.hpp"
#include "explomax/likelihood.hpp"

#include "json.hpp"

namespace explomax {

std::string EstimatorSpec::label() const {
    std::string out = to_string(method);
    if (prior) out += std::string("-") + to_string(*prior);
    if (loss.is_self()) {
        out += "-self";
    } else {
        std::ostringstream c;
        c << loss.c;
        out += "-gelf(c=" + c.str() + ")";
    }
    return out;
}

void StudyConfig::validate() const {
    true_params.validate();
    if (n < 2) throw std::invalid_argument("study needs n >= 2");
    if (reps < 1) throw std::invalid_argument("study needs reps >= 1");
    if (!(censor_time > 0.0)) throw std::invalid_argument("censor time must be positive");
    if (estimators.empty()) throw std::invalid_argument("study needs at least one estimator");
    if (is_samples < 1) throw std::invalid_argument("is_samples must be positive");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    for (const EstimatorSpec& spec : estimators) {
        if (spec.method != Method::ml && !spec.prior)
            throw std::invalid_argument("Bayes estimators need a prior");
        if (spec.method == Method::ml && spec.prior)
            throw std::invalid_argument("ML carries no prior");
        if (!spec.loss.is_self() && spec.loss.c == 0.0)
            throw std::invalid_argument("GELF requires c != 0");
    }
}

CensoredSample generate_censored_sample(const Params& true_params, int n, double censor_time,
                                        RandomStream& rng, Allocation allocation) {
    true_params.validate();
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (!(censor_time > 0.0)) throw std::invalid_argument("censor time must be positive");

    CensoredSample sample;
    sample.n = n;
    sample.censor_time = censor_time;
    if (allocation == Allocation::bernoulli) {
        for (const LabeledTime& lt : mixture_sample(true_params, std::size_t(n), rng)) {
            if (lt.time > censor_time) continue;
            (lt.component == 1 ? sample.obs1 : sample.obs2).push_back(lt.time);
        }
    } else {
        const int n1 = int(std::lround(n * true_params.p));
        for (int i = 0; i < n; ++i) {
            const double u = rng.uniform();
            if (i < n1) {
                const double x = exp_quantile(u, true_params.theta1);
                if (x <= censor_time) sample.obs1.push_back(x);
            } else {
                const double x = lomax_quantile(u, true_params.theta2, true_params.delta);
                if (x <= censor_time) sample.obs2.push_back(x);
            }
        }
    }
    return sample;
}

double estimated_risk(std::span<const double> estimates, double truth, const LossSpec& loss) {
    if (estimates.empty()) throw std::invalid_argument("estimated_risk needs estimates");
    if (!loss.is_self()) {
        if (loss.c == 0.0) throw InvalidLoss("GELF requires c != 0");
        if (!(truth > 0.0)) throw InvalidLoss("GELF risk needs positive truth");
    }
    double acc = 0.0;
    for (double est : estimates) acc += loss_value(loss, est, truth);
    return acc / double(estimates.size());
}

namespace {

using Triple = std::array<double, 3>;

// Per-replication estimates for every estimator; nullopt marks a skip.
struct RepResult {
    std::vector<std::optional<Triple>> by_estimator;
};

RepResult run_replication(const StudyConfig& cfg, std::uint64_t rep_index) {
    RepResult res;
    res.by_estimator.assign(cfg.estimators.size(), std::nullopt);

    RandomStream rep_stream = RandomStream(cfg.seed).substream(rep_index);
    RandomStream gen_stream = rep_stream.substream(0);
    const CensoredSample sample = generate_censored_sample(
        cfg.true_params, cfg.n, cfg.censor_time, gen_stream, cfg.allocation);

    // Samples with an empty component are skipped uniformly so the estimator
    // columns stay comparable.
    if (sample.r1() == 0 || sample.r2() == 0) return res;

    const double delta = cfg.true_params.delta;

    // Shared inputs, built lazily once per replication. IS draws are keyed by
    // prior only, so every loss under the same prior reuses one draw set and
    // adding estimators never perturbs the others' streams.
    std::optional<PosteriorExpansion> expansion[2];
    std::optional<std::vector<WeightedDraw>> draws[2];
    const auto expansion_for = [&](Prior prior) -> const PosteriorExpansion& {
        auto& slot = expansion[prior == Prior::uniform ? 0 : 1];
        if (!slot) slot = build_expansion(sample, delta, prior);
        return *slot;
    };
    const auto draws_for = [&](Prior prior) -> const std::vector<WeightedDraw>& {
        const int idx = prior == Prior::uniform ? 0 : 1;
        auto& slot = draws[idx];
        if (!slot) {
            RandomStream is_stream = rep_stream.substream(1 + idx);
            slot = is_draws(sample, delta, prior, cfg.is_samples, is_stream);
        }
        return *slot;
    };

    for (std::size_t j = 0; j < cfg.estimators.size(); ++j) {
        const EstimatorSpec& spec = cfg.estimators[j];
        try {
            ParamEstimates est;
            switch (spec.method) {
                case Method::ml:
                    est = [&] {
                        const FitResult fit = ml_fit(sample, delta);
                        return ParamEstimates{fit.params.theta1, fit.params.theta2,
                                              fit.params.p};
                    }();
                    break;
                case Method::bayes_closed: {
                    const PosteriorExpansion& e = expansion_for(*spec.prior);
                    est = spec.loss.is_self() ? bayes_self(e) : bayes_gelf(e, spec.loss.c);
                    break;
                }
                case Method::bayes_is:
                    est = is_estimate(draws_for(*spec.prior), spec.loss);
                    break;
            }
            res.by_estimator[j] = Triple{est.theta1, est.theta2, est.p};
        } catch (const NonConvergence&) {
        } catch (const GelfDomainError&) {
        } catch (const DegenerateWeights&) {
        } catch (const ImproperPosterior&) {
        } catch (const ImproperProposal&) {
        }
    }
    return res;
}

}  // namespace

StudyReport run_study(const StudyConfig& config, int threads) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    std::vector<RepResult> results(config.reps);
    const int workers = std::max(1, std::min(threads, config.reps));
    if (workers == 1) {
        for (int i = 0; i < config.reps; ++i) results[i] = run_replication(config, i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (int i = next.fetch_add(1); i < config.reps; i = next.fetch_add(1))
                    results[i] = run_replication(config, i);
            });
        }
        for (std::thread& t : pool) t.join();
    }

    StudyReport report;
    report.config = config;
    const Triple truth = {config.true_params.theta1, config.true_params.theta2,
                          config.true_params.p};
    for (std::size_t j = 0; j < config.estimators.size(); ++j) {
        EstimatorReport row;
        row.spec = config.estimators[j];
        std::array<std::vector<double>, 3> values;
        for (const RepResult& res : results) {
            const auto& maybe = res.by_estimator[j];
            if (!maybe) {
                ++row.skipped;
                continue;
            }
            ++row.used;
            for (int c = 0; c < 3; ++c) values[c].push_back((*maybe)[c]);
        }
        if (row.used > 0) {
            for (int c = 0; c < 3; ++c) {
                double mean = 0.0;
                for (double v : values[c]) mean += v;
                row.cells[c].mean_estimate = mean / double(row.used);
                row.cells[c].risk = estimated_risk(values[c], truth[c], row.spec.loss);
            }
        }
        report.rows.push_back(std::move(row));
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string StudyReport::to_json(bool include_timing) const {
    nlohmann::ordered_json j;
    j["config"] = {
        {"true_params",
         {{"theta1", config.true_params.theta1},
          {"theta2", config.true_params.theta2},
          {"p", config.true_params.p},
          {"delta", config.true_params.delta}}},
        {"n", config.n},
        {"censor_time", config.censor_time},
        {"reps", config.reps},
        {"seed", config.seed},
        {"is_samples", config.is_samples},
        {"alpha", config.alpha},
        {"allocation", to_string(config.allocation)},
    };
    j["estimators"] = nlohmann::ordered_json::array();
    for (const EstimatorReport& row : rows) {
        nlohmann::ordered_json r;
        r["label"] = row.spec.label();
        r["method"] = to_string(row.spec.method);
        if (row.spec.prior) r["prior"] = to_string(*row.spec.prior);
        r["loss"] = row.spec.loss.is_self() ? "self" : "gelf";
        if (!row.spec.loss.is_self()) r["c"] = row.spec.loss.c;
        r["estimates"] = {{"theta1", row.cells[0].mean_estimate},
                          {"theta2", row.cells[1].mean_estimate},
                          {"p", row.cells[2].mean_estimate}};
        r["risks"] = {{"theta1", row.cells[0].risk},
                      {"theta2", row.cells[1].risk},
                      {"p", row.cells[2].risk}};
        r["used"] = row.used;
        r["skipped"] = row.skipped;
        j["estimators"].push_back(std::move(r));
    }
    if (include_timing) j["wall_seconds"] = wall_seconds;
    return j.dump(2);
}

std::string StudyReport::to_table() const {
    std::ostringstream out;
    out << "study: n=" << config.n << " T=" << config.censor_time
        << " theta1=" << config.true_params.theta1 << " theta2=" << config.true_params.theta2
        << " p=" << config.true_params.p << " delta=" << config.true_params.delta
        << " reps=" << config.reps << " seed=" << config.seed
        << " allocation=" << to_string(config.allocation) << "\n\n";
    std::size_t width = 24;
    for (const EstimatorReport& row : rows) width = std::max(width, row.spec.label().size() + 2);
    out << std::left << std::setw(int(width)) << "estimator" << std::right << std::setw(12)
        << "theta1" << std::setw(12) << "theta2" << std::setw(12) << "p" << std::setw(10)
        << "used" << std::setw(10) << "skipped"
        << "\n";
    for (const EstimatorReport& row : rows) {
        out << std::left << std::setw(int(width)) << row.spec.label() << std::right
            << std::fixed << std::setprecision(5) << std::setw(12)
            << row.cells[0].mean_estimate << std::setw(12) << row.cells[1].mean_estimate
            << std::setw(12) << row.cells[2].mean_estimate << std::setw(10) << row.used
            << std::setw(10) << row.skipped << "\n";
        out << std::left << std::setw(int(width)) << "  risk" << std::right << std::setw(12)
            << row.cells[0].risk << std::setw(12) << row.cells[1].risk << std::setw(12)
            << row.cells[2].risk << "\n";
        out.unsetf(std::ios::fixed);
        out << std::setprecision(6);
    }
    return out.str();
}

}  // namespace explomax

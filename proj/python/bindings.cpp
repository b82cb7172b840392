#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "explomax/bayes.hpp"
#include "explomax/distributions.hpp"
#include "explomax/importance.hpp"
#include "explomax/likelihood.hpp"
#include "explomax/predictive.hpp"
#include "explomax/simulation.hpp"

namespace py = pybind11;
using namespace explomax;

PYBIND11_MODULE(_explomax, m) {
    m.doc() = "exponential-Lomax mixture estimation under type-I right censoring";

    py::register_exception<ImproperPosterior>(m, "ImproperPosterior");
    py::register_exception<GelfDomainError>(m, "GelfDomainError");
    py::register_exception<InvalidLoss>(m, "InvalidLoss");
    py::register_exception<ImproperProposal>(m, "ImproperProposal");
    py::register_exception<DegenerateWeights>(m, "DegenerateWeights");
    py::register_exception<SingularInformation>(m, "SingularInformation");
    py::register_exception<NoFailures>(m, "NoFailures");

    py::class_<RandomStream>(m, "RandomStream")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("substream", &RandomStream::substream, py::arg("index"))
        .def("uniform", &RandomStream::uniform)
        .def("normal", &RandomStream::normal)
        .def("exponential", &RandomStream::exponential, py::arg("rate"))
        .def("gamma", &RandomStream::gamma, py::arg("shape"), py::arg("rate"))
        .def("beta", &RandomStream::beta, py::arg("a"), py::arg("b"));

    py::class_<Params>(m, "Params")
        .def(py::init([](double theta1, double theta2, double p, double delta) {
                 Params out{theta1, theta2, p, delta};
                 out.validate();
                 return out;
             }),
             py::arg("theta1"), py::arg("theta2"), py::arg("p"), py::arg("delta") = 1.0)
        .def_readonly("theta1", &Params::theta1)
        .def_readonly("theta2", &Params::theta2)
        .def_readonly("p", &Params::p)
        .def_readonly("delta", &Params::delta)
        .def("__repr__", [](const Params& x) {
            return "Params(theta1=" + std::to_string(x.theta1) +
                   ", theta2=" + std::to_string(x.theta2) + ", p=" + std::to_string(x.p) +
                   ", delta=" + std::to_string(x.delta) + ")";
        });

    py::class_<ParamEstimates>(m, "ParamEstimates")
        .def_readonly("theta1", &ParamEstimates::theta1)
        .def_readonly("theta2", &ParamEstimates::theta2)
        .def_readonly("p", &ParamEstimates::p)
        .def("__repr__", [](const ParamEstimates& x) {
            return "ParamEstimates(theta1=" + std::to_string(x.theta1) +
                   ", theta2=" + std::to_string(x.theta2) + ", p=" + std::to_string(x.p) + ")";
        });

    m.def("exp_pdf", &exp_pdf, py::arg("x"), py::arg("theta1"));
    m.def("exp_cdf", &exp_cdf, py::arg("x"), py::arg("theta1"));
    m.def("lomax_pdf", &lomax_pdf, py::arg("x"), py::arg("theta2"), py::arg("delta"));
    m.def("lomax_cdf", &lomax_cdf, py::arg("x"), py::arg("theta2"), py::arg("delta"));
    m.def("exp_quantile", &exp_quantile, py::arg("u"), py::arg("theta1"));
    m.def("lomax_quantile", &lomax_quantile, py::arg("u"), py::arg("theta2"), py::arg("delta"));
    m.def("mixture_pdf", &mixture_pdf, py::arg("x"), py::arg("params"));
    m.def("mixture_cdf", &mixture_cdf, py::arg("x"), py::arg("params"));
    m.def("mixture_survival", &mixture_survival, py::arg("x"), py::arg("params"));

    py::class_<LabeledTime>(m, "LabeledTime")
        .def_readonly("time", &LabeledTime::time)
        .def_readonly("component", &LabeledTime::component);
    m.def("mixture_sample", &mixture_sample, py::arg("params"), py::arg("count"),
          py::arg("rng"));

    py::class_<CensoredSample>(m, "CensoredSample")
        .def(py::init([](std::vector<double> obs1, std::vector<double> obs2, int n,
                         double censor_time) {
                 CensoredSample s{std::move(obs1), std::move(obs2), n, censor_time};
                 s.validate();
                 return s;
             }),
             py::arg("obs1"), py::arg("obs2"), py::arg("n"), py::arg("censor_time"))
        .def_readonly("obs1", &CensoredSample::obs1)
        .def_readonly("obs2", &CensoredSample::obs2)
        .def_readonly("n", &CensoredSample::n)
        .def_readonly("censor_time", &CensoredSample::censor_time)
        .def_property_readonly("r1", &CensoredSample::r1)
        .def_property_readonly("r2", &CensoredSample::r2)
        .def_property_readonly("censored", &CensoredSample::censored);

    m.def("log_likelihood_direct", &log_likelihood_direct, py::arg("params"),
          py::arg("sample"));
    m.def("log_likelihood_expanded", &log_likelihood_expanded, py::arg("params"),
          py::arg("sample"));
    m.def("score", &score, py::arg("params"), py::arg("sample"));
    m.def(
        "observed_information",
        [](const Params& params, const CensoredSample& sample) {
            return observed_information(params, sample).to_array();
        },
        py::arg("params"), py::arg("sample"));

    py::class_<FitReport>(m, "FitReport")
        .def_readonly("iterations", &FitReport::iterations)
        .def_readonly("grad_norm", &FitReport::grad_norm)
        .def_readonly("converged", &FitReport::converged)
        .def_readonly("information_positive_definite",
                      &FitReport::information_positive_definite);
    py::class_<FitResult>(m, "FitResult")
        .def_readonly("params", &FitResult::params)
        .def_readonly("report", &FitResult::report);
    m.def("ml_fit", &ml_fit, py::arg("sample"), py::arg("delta"),
          py::arg("init") = std::nullopt);
    m.def("ml_variances", &ml_variances, py::arg("params"), py::arg("sample"));

    py::enum_<Prior>(m, "Prior")
        .value("uniform", Prior::uniform)
        .value("jeffreys", Prior::jeffreys);

    py::class_<PosteriorExpansion>(m, "PosteriorExpansion")
        .def_property_readonly("prior", &PosteriorExpansion::prior)
        .def_property_readonly("log_h", &PosteriorExpansion::log_h)
        .def_property_readonly("r1", &PosteriorExpansion::r1)
        .def_property_readonly("r2", &PosteriorExpansion::r2)
        .def("moment", &PosteriorExpansion::moment, py::arg("coord"), py::arg("power"));
    m.def("build_expansion", &build_expansion, py::arg("sample"), py::arg("delta"),
          py::arg("prior"));

    py::class_<LossSpec>(m, "LossSpec")
        .def_static("self", &LossSpec::self)
        .def_static("gelf", &LossSpec::gelf, py::arg("c"))
        .def_readonly("c", &LossSpec::c);
    m.def("loss_value", &loss_value, py::arg("loss"), py::arg("estimate"), py::arg("truth"));

    m.def("bayes_self", &bayes_self, py::arg("expansion"));
    m.def("bayes_gelf", &bayes_gelf, py::arg("expansion"), py::arg("c"));
    m.def("posterior_variance", &posterior_variance, py::arg("expansion"));

    py::class_<WeightedDraw>(m, "WeightedDraw")
        .def_readonly("theta1", &WeightedDraw::theta1)
        .def_readonly("theta2", &WeightedDraw::theta2)
        .def_readonly("p", &WeightedDraw::p)
        .def_readonly("log_h", &WeightedDraw::log_h);
    m.def("is_draws", &is_draws, py::arg("sample"), py::arg("delta"), py::arg("prior"),
          py::arg("sample_count"), py::arg("rng"));
    m.def(
        "is_estimate",
        [](const std::vector<WeightedDraw>& draws, const LossSpec& loss) {
            return is_estimate(draws, loss);
        },
        py::arg("draws"), py::arg("loss"));
    m.def(
        "effective_sample_size",
        [](const std::vector<WeightedDraw>& draws) { return effective_sample_size(draws); },
        py::arg("draws"));

    py::class_<PredictiveSummary>(m, "PredictiveSummary")
        .def_readonly("median", &PredictiveSummary::median)
        .def_readonly("lower", &PredictiveSummary::lower)
        .def_readonly("upper", &PredictiveSummary::upper)
        .def_readonly("alpha", &PredictiveSummary::alpha)
        .def_readonly("prior", &PredictiveSummary::prior);
    m.def("predictive_pdf", &predictive_pdf, py::arg("y"), py::arg("expansion"));
    m.def("predictive_cdf", &predictive_cdf, py::arg("y"), py::arg("expansion"));
    m.def("predictive_interval", &predictive_interval, py::arg("expansion"), py::arg("alpha"));

    py::enum_<Method>(m, "Method")
        .value("ml", Method::ml)
        .value("bayes_closed", Method::bayes_closed)
        .value("bayes_is", Method::bayes_is);
    py::enum_<Allocation>(m, "Allocation")
        .value("proportional", Allocation::proportional)
        .value("bernoulli", Allocation::bernoulli);

    py::class_<EstimatorSpec>(m, "EstimatorSpec")
        .def(py::init([](Method method, std::optional<Prior> prior, LossSpec loss) {
                 return EstimatorSpec{method, prior, loss};
             }),
             py::arg("method"), py::arg("prior") = std::nullopt,
             py::arg("loss") = LossSpec::self())
        .def("label", &EstimatorSpec::label);

    py::class_<StudyConfig>(m, "StudyConfig")
        .def(py::init([](Params true_params, int n, double censor_time, int reps,
                         std::uint64_t seed, std::vector<EstimatorSpec> estimators,
                         int is_samples, double alpha, Allocation allocation) {
                 StudyConfig cfg{true_params, n,          censor_time, reps, seed,
                                 std::move(estimators),   is_samples,  alpha, allocation};
                 cfg.validate();
                 return cfg;
             }),
             py::arg("true_params"), py::arg("n"), py::arg("censor_time"), py::arg("reps"),
             py::arg("seed"), py::arg("estimators"), py::arg("is_samples") = 1000,
             py::arg("alpha") = 0.01, py::arg("allocation") = Allocation::proportional);

    py::class_<CellStats>(m, "CellStats")
        .def_readonly("mean_estimate", &CellStats::mean_estimate)
        .def_readonly("risk", &CellStats::risk);
    py::class_<EstimatorReport>(m, "EstimatorReport")
        .def_readonly("cells", &EstimatorReport::cells)
        .def_readonly("used", &EstimatorReport::used)
        .def_readonly("skipped", &EstimatorReport::skipped)
        .def_property_readonly("label",
                               [](const EstimatorReport& r) { return r.spec.label(); });
    py::class_<StudyReport>(m, "StudyReport")
        .def_readonly("rows", &StudyReport::rows)
        .def_readonly("wall_seconds", &StudyReport::wall_seconds)
        .def("to_json", &StudyReport::to_json, py::arg("include_timing") = false)
        .def("to_table", &StudyReport::to_table);

    m.def("generate_censored_sample", &generate_censored_sample, py::arg("true_params"),
          py::arg("n"), py::arg("censor_time"), py::arg("rng"),
          py::arg("allocation") = Allocation::proportional);
    m.def(
        "estimated_risk",
        [](const std::vector<double>& estimates, double truth, const LossSpec& loss) {
            return estimated_risk(estimates, truth, loss);
        },
        py::arg("estimates"), py::arg("truth"), py::arg("loss"));
    m.def("run_study", &run_study, py::arg("config"), py::arg("threads") = 1,
          py::call_guard<py::gil_scoped_release>());
}

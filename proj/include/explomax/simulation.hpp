#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "explomax/bayes.hpp"
#include "explomax/censored_sample.hpp"
#include "explomax/expansion.hpp"
#include "explomax/params.hpp"
#include "explomax/rng.hpp"

namespace explomax {

enum class Method { ml, bayes_closed, bayes_is };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::ml: return "ml";
        case Method::bayes_closed: return "bayes";
        default: return "is";
    }
}

// Method x prior x loss cell of the study tables. ML carries no prior.
struct EstimatorSpec {
    Method method = Method::ml;
    std::optional<Prior> prior;
    LossSpec loss = LossSpec::self();

    std::string label() const;
};

// How the n units are split between the components when generating a sample.
// proportional puts round(n p) units on the exponential component, the rest
// on the Lomax component; bernoulli draws each unit's label independently.
enum class Allocation { proportional, bernoulli };

inline const char* to_string(Allocation a) {
    return a == Allocation::proportional ? "proportional" : "bernoulli";
}

struct StudyConfig {
    Params true_params;
    int n = 0;
    double censor_time = 0.0;
    int reps = 1;
    std::uint64_t seed = 0;
    std::vector<EstimatorSpec> estimators;
    int is_samples = 1000;   // importance-sampling draw count M
    double alpha = 0.01;     // predictive level (echoed to reports)
    Allocation allocation = Allocation::proportional;

    void validate() const;
};

struct CellStats {
    double mean_estimate = 0.0;
    double risk = 0.0;
};

struct EstimatorReport {
    EstimatorSpec spec;
    std::array<CellStats, 3> cells;  // (theta1, theta2, p)
    int used = 0;
    int skipped = 0;
};

struct StudyReport {
    StudyConfig config;
    std::vector<EstimatorReport> rows;
    double wall_seconds = 0.0;

    std::string to_json(bool include_timing = false) const;
    std::string to_table() const;
};

// Draws n labeled lifetimes, censors at T, and discards the labels of the
// censored units.
CensoredSample generate_censored_sample(const Params& true_params, int n, double censor_time,
                                        RandomStream& rng,
                                        Allocation allocation = Allocation::proportional);

// Monte-Carlo mean of the loss at the truth over the replications.
double estimated_risk(std::span<const double> estimates, double truth, const LossSpec& loss);

// Runs the full study. Replications whose sample has an empty component are
// skipped for every estimator; other per-replication estimator failures
// (GELF domain, weight collapse, non-convergence) are tallied per estimator.
// Replication substreams are derived from (seed, replication index), so the
// report is identical for any worker count.
StudyReport run_study(const StudyConfig& config, int threads = 1);

}  // namespace explomax

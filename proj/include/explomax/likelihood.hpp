#pragma once

#include <array>
#include <optional>
#include <stdexcept>

#include "explomax/censored_sample.hpp"
#include "explomax/errors.hpp"
#include "explomax/params.hpp"

namespace explomax {

// Log-likelihood of the censored mixture sample, direct product form, up to
// the additive constant ln(eta) that the expanded form carries. Returns
// -infinity when the censoring survival mass underflows at the given point.
double log_likelihood_direct(const Params& params, const CensoredSample& sample);

// Binomial-expansion form of the same likelihood, evaluated by log-sum-exp
// over k = 0..(n-r). Differs from the direct form by a constant in the
// parameters (the data-dependent part of ln eta).
double log_likelihood_expanded(const Params& params, const CensoredSample& sample);

// Gradient of the log-likelihood in (theta1, theta2, p).
std::array<double, 3> score(const Params& params, const CensoredSample& sample);

// Symmetric 3x3 observed information (negated Hessian), ordered (theta1,
// theta2, p).
struct InfoMatrix {
    double i11 = 0.0, i22 = 0.0, i33 = 0.0;
    double i12 = 0.0, i13 = 0.0, i23 = 0.0;

    double operator()(int row, int col) const;
    std::array<std::array<double, 3>, 3> to_array() const;
};

InfoMatrix observed_information(const Params& params, const CensoredSample& sample);

struct FitReport {
    int iterations = 0;
    double grad_norm = 0.0;  // final infinity-norm of the raw score
    bool converged = false;
    bool information_positive_definite = false;
};

struct FitResult {
    Params params;
    FitReport report;
};

// Newton iteration left a nonstationary point behind; carries the best point
// found so far.
struct NonConvergence : std::runtime_error {
    NonConvergence(const std::string& msg, Params best_found, FitReport rep)
        : std::runtime_error(msg), best(best_found), report(rep) {}
    Params best;
    FitReport report;
};

// Maximum-likelihood fit. Newton's method on (log theta1, log theta2,
// logit p) with backtracking line search; the transform keeps iterates
// strictly feasible. Default start is the uncensored closed-form point
// (r1/S1, r2/S2, r1/r). Requires at least one observed failure per
// component (throws NoFailures otherwise).
FitResult ml_fit(const CensoredSample& sample, double delta,
                 std::optional<Params> init = std::nullopt);

// Diagonal of the inverse observed information at the given point.
std::array<double, 3> ml_variances(const Params& params, const CensoredSample& sample);

}  // namespace explomax

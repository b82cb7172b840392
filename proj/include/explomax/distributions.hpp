#pragma once

#include <cstddef>
#include <vector>

#include "explomax/params.hpp"
#include "explomax/rng.hpp"

namespace explomax {

// Component densities and distribution functions. All evaluators throw
// std::domain_error on x < 0 or nonpositive parameters.
double exp_pdf(double x, double theta1);
double exp_cdf(double x, double theta1);
double lomax_pdf(double x, double theta2, double delta);
double lomax_cdf(double x, double theta2, double delta);

// Inverse CDFs, u in (0, 1). Used by the exact mixture sampler and exposed
// for tests.
double exp_quantile(double u, double theta1);
double lomax_quantile(double u, double theta2, double delta);

double mixture_pdf(double x, const Params& params);
double mixture_cdf(double x, const Params& params);

// Survival 1 - F and its logarithm, computed without cancellation. The log
// form never underflows for finite inputs.
double mixture_survival(double x, const Params& params);
double log_mixture_survival(double x, const Params& params);

struct LabeledTime {
    double time;
    int component;  // 1 = exponential, 2 = Lomax
};

// Exact inverse-transform sampling from the mixture. Each draw consumes one
// uniform for the component label and one for the lifetime, so streams stay
// aligned regardless of which branch is taken.
std::vector<LabeledTime> mixture_sample(const Params& params, std::size_t count,
                                        RandomStream& rng);

}  // namespace explomax

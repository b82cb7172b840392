#include "explomax/distributions.hpp"

#include <cmath>
#include <stdexcept>

#include "explomax/log_space.hpp"

namespace explomax {

namespace {

void check_x(double x) {
    if (!(x >= 0.0)) throw std::domain_error("x must be nonnegative");
}

}  // namespace

double exp_pdf(double x, double theta1) {
    check_x(x);
    if (!(theta1 > 0.0)) throw std::domain_error("theta1 must be positive");
    return theta1 * std::exp(-theta1 * x);
}

double exp_cdf(double x, double theta1) {
    check_x(x);
    if (!(theta1 > 0.0)) throw std::domain_error("theta1 must be positive");
    return -std::expm1(-theta1 * x);
}

// Evaluated in log space: delta^theta2 overflows directly for the parameter
// scales seen in real data (theta2 ~ 150, delta ~ 3e4).
double lomax_pdf(double x, double theta2, double delta) {
    check_x(x);
    if (!(theta2 > 0.0)) throw std::domain_error("theta2 must be positive");
    if (!(delta > 0.0)) throw std::domain_error("delta must be positive");
    const double lp =
        std::log(theta2) + theta2 * std::log(delta) - (theta2 + 1.0) * std::log(x + delta);
    return std::exp(lp);
}

double lomax_cdf(double x, double theta2, double delta) {
    check_x(x);
    if (!(theta2 > 0.0)) throw std::domain_error("theta2 must be positive");
    if (!(delta > 0.0)) throw std::domain_error("delta must be positive");
    return -std::expm1(-theta2 * std::log1p(x / delta));
}

double exp_quantile(double u, double theta1) {
    if (!(u > 0.0 && u < 1.0)) throw std::domain_error("u must lie in (0, 1)");
    if (!(theta1 > 0.0)) throw std::domain_error("theta1 must be positive");
    return -std::log1p(-u) / theta1;
}

double lomax_quantile(double u, double theta2, double delta) {
    if (!(u > 0.0 && u < 1.0)) throw std::domain_error("u must lie in (0, 1)");
    if (!(theta2 > 0.0)) throw std::domain_error("theta2 must be positive");
    if (!(delta > 0.0)) throw std::domain_error("delta must be positive");
    return delta * std::expm1(-std::log1p(-u) / theta2);
}

double mixture_pdf(double x, const Params& params) {
    params.validate();
    return params.p * exp_pdf(x, params.theta1) +
           (1.0 - params.p) * lomax_pdf(x, params.theta2, params.delta);
}

double mixture_cdf(double x, const Params& params) {
    params.validate();
    return 1.0 - mixture_survival(x, params);
}

double mixture_survival(double x, const Params& params) {
    return std::exp(log_mixture_survival(x, params));
}

double log_mixture_survival(double x, const Params& params) {
    params.validate();
    check_x(x);
    const double log_exp_branch = std::log(params.p) - params.theta1 * x;
    const double log_lomax_branch =
        std::log1p(-params.p) - params.theta2 * std::log1p(x / params.delta);
    return log_sum_exp(log_exp_branch, log_lomax_branch);
}

std::vector<LabeledTime> mixture_sample(const Params& params, std::size_t count,
                                        RandomStream& rng) {
    params.validate();
    std::vector<LabeledTime> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double u_label = rng.uniform();
        const double u_time = rng.uniform();
        if (u_label < params.p) {
            out.push_back({exp_quantile(u_time, params.theta1), 1});
        } else {
            out.push_back({lomax_quantile(u_time, params.theta2, params.delta), 2});
        }
    }
    return out;
}

}  // namespace explomax

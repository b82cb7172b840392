#include "explomax/predictive.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "explomax/log_space.hpp"

namespace explomax {

namespace {

// Branch prefactors and k-sums of the predictive density
//   f(y|x) = (1/H) [ G(rho1+1) G(rho2) sum_k ... (A2k + y)^-(rho1+1) B2k^-rho2
//                      Beta(k+r1+2, n-k-r1+1)
//            + G(rho1) G(rho2+1)/(y+delta) sum_k ... A2k^-rho1
//                      {B2k + ln(1+y/delta)}^-(rho2+1) Beta(k+r1+1, n-k-r1+2) ]
// and of its exact antiderivative. The exponential branch integrates to
// {A^-rho1 - (A+y)^-rho1}/rho1 and the Lomax branch to
// {B^-rho2 - (B+ln(1+y/delta))^-rho2}/rho2; both are formed through expm1 so
// small y does not cancel.

double log_sum_terms(const PosteriorExpansion& e, bool exp_branch, double y, bool integral) {
    const auto& terms = e.terms();
    const double ly = std::log1p(y / e.delta());
    std::vector<double> vals(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const ExpansionTerm& t = terms[i];
        double v = t.log_binom;
        if (exp_branch) {
            v += log_beta(t.k + e.r1() + 2, e.n() - t.k - e.r1() + 1) -
                 e.rho2() * std::log(t.B2k);
            if (integral) {
                v += -e.rho1() * std::log(t.A2k) +
                     std::log(-std::expm1(-e.rho1() * std::log1p(y / t.A2k)));
            } else {
                v += -(e.rho1() + 1.0) * std::log(t.A2k + y);
            }
        } else {
            v += log_beta(t.k + e.r1() + 1, e.n() - t.k - e.r1() + 2) -
                 e.rho1() * std::log(t.A2k);
            if (integral) {
                v += -e.rho2() * std::log(t.B2k) +
                     std::log(-std::expm1(-e.rho2() * std::log1p(ly / t.B2k)));
            } else {
                v += -(e.rho2() + 1.0) * std::log(t.B2k + ly);
            }
        }
        vals[i] = v;
    }
    return log_sum_exp(vals);
}

}  // namespace

double predictive_pdf(double y, const PosteriorExpansion& e) {
    if (!(y >= 0.0)) throw std::domain_error("y must be nonnegative");
    const double log_exp_branch = std::lgamma(e.rho1() + 1.0) + std::lgamma(e.rho2()) +
                                  log_sum_terms(e, true, y, false);
    const double log_lomax_branch = std::lgamma(e.rho1()) + std::lgamma(e.rho2() + 1.0) -
                                    std::log(y + e.delta()) +
                                    log_sum_terms(e, false, y, false);
    return std::exp(log_exp_branch - e.log_h()) + std::exp(log_lomax_branch - e.log_h());
}

double predictive_cdf(double y, const PosteriorExpansion& e) {
    if (!(y >= 0.0)) throw std::domain_error("y must be nonnegative");
    if (y == 0.0) return 0.0;
    const double log_exp_branch = std::lgamma(e.rho1() + 1.0) + std::lgamma(e.rho2()) -
                                  std::log(e.rho1()) + log_sum_terms(e, true, y, true);
    const double log_lomax_branch = std::lgamma(e.rho1()) + std::lgamma(e.rho2() + 1.0) -
                                    std::log(e.rho2()) + log_sum_terms(e, false, y, true);
    const double cdf =
        std::exp(log_exp_branch - e.log_h()) + std::exp(log_lomax_branch - e.log_h());
    return std::min(cdf, 1.0);
}

PredictiveSummary predictive_interval(const PosteriorExpansion& e, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("alpha must lie in the open interval (0, 1)");

    const auto quantile = [&](double target) {
        double lo = 0.0, hi = 1.0;
        double f_hi = predictive_cdf(hi, e);
        int grow = 0;
        while (f_hi < target) {
            lo = hi;
            hi *= 2.0;
            f_hi = predictive_cdf(hi, e);
            if (++grow > 1024)
                throw std::runtime_error(
                    "predictive quantile bracket failed: cdf plateaued at " +
                    std::to_string(f_hi) + " below target " + std::to_string(target));
        }
        for (int iter = 0; iter < 400; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            const double f = predictive_cdf(mid, e);
            if (std::abs(f - target) <= 1e-12) return mid;
            (f < target ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };

    PredictiveSummary out;
    out.alpha = alpha;
    out.prior = e.prior();
    out.lower = quantile(alpha / 2.0);
    out.median = quantile(0.5);
    out.upper = quantile(1.0 - alpha / 2.0);
    return out;
}

}  // namespace explomax

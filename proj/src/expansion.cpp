#include "explomax/expansion.hpp"

#include <cmath>
#include <stdexcept>

#include "explomax/log_space.hpp"

namespace explomax {

double PosteriorExpansion::log_sum(double da, double db, double dbeta) const {
    std::vector<double> vals(terms_.size());
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const ExpansionTerm& t = terms_[i];
        vals[i] = t.log_binom - (rho1_ + da) * log_a_[i] - (rho2_ + db) * log_b_[i] +
                  log_beta(t.k + r1_ + 1 + dbeta, n_ - t.k - r1_ + 1);
    }
    return log_sum_exp(vals);
}

double PosteriorExpansion::moment(int coord, double s) const {
    if (coord < 0 || coord > 2) throw std::domain_error("moment: coord must be 0, 1 or 2");
    if (coord == 0 || coord == 1) {
        const double rho = coord == 0 ? rho1_ : rho2_;
        if (!(rho + s > 0.0))
            throw std::domain_error("moment: gamma argument rho + s must be positive");
        const double num = std::lgamma(rho1_ + (coord == 0 ? s : 0.0)) +
                           std::lgamma(rho2_ + (coord == 1 ? s : 0.0)) +
                           log_sum(coord == 0 ? s : 0.0, coord == 1 ? s : 0.0, 0.0);
        return std::exp(num - log_h_);
    }
    // E[p^s]: every retained k needs k + r1 + 1 + s > 0.
    if (!(terms_.front().k + r1_ + 1 + s > 0.0))
        throw std::domain_error("moment: beta argument k + r1 + 1 + s must be positive");
    const double num = std::lgamma(rho1_) + std::lgamma(rho2_) + log_sum(0.0, 0.0, s);
    return std::exp(num - log_h_);
}

PosteriorExpansion build_expansion(const CensoredSample& sample, double delta, Prior prior) {
    const SuffStats s = SuffStats::from(sample, delta);
    if (prior == Prior::jeffreys) {
        if (s.r1 == 0)
            throw ImproperPosterior(
                "Jeffreys posterior is improper with r1 = 0: Gamma(r1) diverges in H3");
        if (s.r2 == 0)
            throw ImproperPosterior(
                "Jeffreys posterior is improper with r2 = 0: Gamma(r2) diverges in H3");
    }

    PosteriorExpansion e;
    e.prior_ = prior;
    e.r1_ = s.r1;
    e.r2_ = s.r2;
    e.n_ = s.n;
    e.T_ = s.T;
    e.delta_ = delta;
    e.rho1_ = prior == Prior::uniform ? s.r1 + 1.0 : double(s.r1);
    e.rho2_ = prior == Prior::uniform ? s.r2 + 1.0 : double(s.r2);

    const int m = s.censored();
    const double LT = std::log1p(s.T / delta);
    for (int k = 0; k <= m; ++k) {
        const double a = s.S1 + s.T * k;
        const double b = s.S2 + (m - k) * LT;
        if (!(a > 0.0) || !(b > 0.0)) continue;  // 0^-(positive power): drop
        e.terms_.push_back({k, a, b, log_binom(m, k)});
        e.log_a_.push_back(std::log(a));
        e.log_b_.push_back(std::log(b));
    }
    if (e.terms_.empty())
        throw ImproperPosterior(
            "posterior normalizer is not finite: every expansion term has A2k = 0 or "
            "B2k = 0 (a component has no observed failures and no censored mass covers it)");

    e.log_h_ = std::lgamma(e.rho1_) + std::lgamma(e.rho2_) + e.log_sum(0.0, 0.0, 0.0);
    if (!std::isfinite(e.log_h_))
        throw ImproperPosterior("posterior normalizer H is not finite for this sample");
    return e;
}

}  // namespace explomax

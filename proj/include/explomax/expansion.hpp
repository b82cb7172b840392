#pragma once

#include <string>
#include <vector>

#include "explomax/censored_sample.hpp"
#include "explomax/errors.hpp"

namespace explomax {

enum class Prior { uniform, jeffreys };

inline const char* to_string(Prior p) { return p == Prior::uniform ? "uniform" : "jeffreys"; }

// One k-term of the binomial expansion of the censored likelihood:
// A2k = S1 + T k, B2k = S2 + (n - r - k) ln(1 + T/delta).
struct ExpansionTerm {
    int k = 0;
    double A2k = 0.0;
    double B2k = 0.0;
    double log_binom = 0.0;
};

// The k-indexed machinery behind every closed-form posterior quantity.
//
// Under either noninformative prior the joint posterior is a finite mixture
// over k of independent Gamma(rho1, A2k) x Gamma(rho2, B2k) x
// Beta(k + r1 + 1, n - k - r1 + 1) factors, with rho = r + 1 under the
// uniform prior and rho = r under Jeffreys. Every estimator, variance and
// predictive quantity reduces to ratios of the weighted sums evaluated by
// log_sum(); all of it stays in log space because the Gamma factors overflow
// for realistic r.
class PosteriorExpansion {
  public:
    Prior prior() const { return prior_; }
    int r1() const { return r1_; }
    int r2() const { return r2_; }
    int n() const { return n_; }
    double censor_time() const { return T_; }
    double delta() const { return delta_; }
    double rho1() const { return rho1_; }
    double rho2() const { return rho2_; }
    double log_h() const { return log_h_; }
    const std::vector<ExpansionTerm>& terms() const { return terms_; }

    // log of sum_k binom(n-r, k) A2k^-(rho1+da) B2k^-(rho2+db)
    //                 Beta(k + r1 + 1 + dbeta, n - k - r1 + 1)
    double log_sum(double da, double db, double dbeta) const;

    // Posterior moments E[theta1^s], E[theta2^s], E[p^s]; coord is 0, 1, 2.
    // Throws std::domain_error when the moment does not exist (gamma or beta
    // argument nonpositive).
    double moment(int coord, double s) const;

  private:
    friend PosteriorExpansion build_expansion(const CensoredSample&, double, Prior);

    std::vector<ExpansionTerm> terms_;
    std::vector<double> log_a_;  // cached ln A2k
    std::vector<double> log_b_;  // cached ln B2k
    Prior prior_ = Prior::uniform;
    int r1_ = 0, r2_ = 0, n_ = 0;
    double T_ = 0.0, delta_ = 1.0;
    double rho1_ = 0.0, rho2_ = 0.0;
    double log_h_ = 0.0;
};

// Builds the expansion, checking propriety eagerly. Degenerate terms
// (A2k = 0 or B2k = 0, possible only when a component has no observed
// failures) are excluded; if nothing integrable remains, or the Jeffreys
// prior is combined with an empty component, ImproperPosterior names the
// failing condition.
PosteriorExpansion build_expansion(const CensoredSample& sample, double delta, Prior prior);

}  // namespace explomax

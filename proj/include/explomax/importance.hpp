#pragma once

#include <span>
#include <vector>

#include "explomax/bayes.hpp"
#include "explomax/censored_sample.hpp"
#include "explomax/expansion.hpp"
#include "explomax/params.hpp"
#include "explomax/rng.hpp"

namespace explomax {

// Proposal densities for the importance sampler: the conjugate posteriors of
// the uncensored part of the likelihood. The censoring factor h(theta) is
// what gets reweighted.
struct ProposalSpec {
    double gamma1_shape = 0.0, gamma1_rate = 0.0;
    double gamma2_shape = 0.0, gamma2_rate = 0.0;
    double beta_a = 0.0, beta_b = 0.0;
    int sample_count = 1000;

    // uniform: Gamma(r1+1, S1), Gamma(r2+1, S2); Jeffreys: Gamma(r1, S1),
    // Gamma(r2, S2); Beta(r1+1, r2+1) under both. Throws ImproperProposal
    // when a shape or rate is nonpositive.
    static ProposalSpec from(const CensoredSample& sample, double delta, Prior prior,
                             int sample_count);
};

struct WeightedDraw {
    double theta1 = 0.0;
    double theta2 = 0.0;
    double p = 0.0;
    double log_h = 0.0;  // (n - r) ln C(theta), always <= 0
};

// M independent proposal draws with their censoring log-weights;
// deterministic given the stream.
std::vector<WeightedDraw> is_draws(const CensoredSample& sample, double delta, Prior prior,
                                   int sample_count, RandomStream& rng);

// Self-normalized importance estimate under the given loss. Weights are
// normalized through log-sum-exp; the reduction runs in draw order so results
// are bitwise reproducible. Throws DegenerateWeights when the weights
// collapse (sum w / max w < 2, judged only for two or more draws).
ParamEstimates is_estimate(std::span<const WeightedDraw> draws, const LossSpec& loss);

// (sum w)^2 / sum w^2, the usual weight-degeneracy diagnostic.
double effective_sample_size(std::span<const WeightedDraw> draws);

}  // namespace explomax

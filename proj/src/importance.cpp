#include "explomax/importance.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "explomax/distributions.hpp"

namespace explomax {

ProposalSpec ProposalSpec::from(const CensoredSample& sample, double delta, Prior prior,
                                int sample_count) {
    const SuffStats s = SuffStats::from(sample, delta);
    if (sample_count < 1) throw std::invalid_argument("sample count must be positive");
    ProposalSpec spec;
    spec.gamma1_shape = prior == Prior::uniform ? s.r1 + 1.0 : double(s.r1);
    spec.gamma2_shape = prior == Prior::uniform ? s.r2 + 1.0 : double(s.r2);
    spec.gamma1_rate = s.S1;
    spec.gamma2_rate = s.S2;
    spec.beta_a = s.r1 + 1.0;
    spec.beta_b = s.r2 + 1.0;
    spec.sample_count = sample_count;
    if (!(spec.gamma1_shape > 0.0))
        throw ImproperProposal("theta1 proposal has gamma shape r1 = 0 under the Jeffreys prior");
    if (!(spec.gamma2_shape > 0.0))
        throw ImproperProposal("theta2 proposal has gamma shape r2 = 0 under the Jeffreys prior");
    if (!(spec.gamma1_rate > 0.0))
        throw ImproperProposal("theta1 proposal has gamma rate S1 = 0 (no component-1 failures)");
    if (!(spec.gamma2_rate > 0.0))
        throw ImproperProposal("theta2 proposal has gamma rate S2 = 0 (no component-2 failures)");
    return spec;
}

std::vector<WeightedDraw> is_draws(const CensoredSample& sample, double delta, Prior prior,
                                   int sample_count, RandomStream& rng) {
    const ProposalSpec spec = ProposalSpec::from(sample, delta, prior, sample_count);
    const int m = sample.censored();
    std::vector<WeightedDraw> draws(spec.sample_count);
    for (WeightedDraw& d : draws) {
        d.theta1 = rng.gamma(spec.gamma1_shape, spec.gamma1_rate);
        d.theta2 = rng.gamma(spec.gamma2_shape, spec.gamma2_rate);
        d.p = rng.beta(spec.beta_a, spec.beta_b);
        d.log_h = m == 0 ? 0.0
                         : m * log_mixture_survival(
                                   sample.censor_time,
                                   Params{d.theta1, d.theta2, d.p, delta});
    }
    return draws;
}

ParamEstimates is_estimate(std::span<const WeightedDraw> draws, const LossSpec& loss) {
    if (draws.empty()) throw std::invalid_argument("is_estimate needs at least one draw");
    if (!loss.is_self() && loss.c == 0.0) throw InvalidLoss("GELF requires c != 0");

    double max_log = draws[0].log_h;
    for (const WeightedDraw& d : draws) max_log = std::max(max_log, d.log_h);
    if (!std::isfinite(max_log)) throw DegenerateWeights("no draw has a finite log weight");

    double sum_w = 0.0;
    for (const WeightedDraw& d : draws) sum_w += std::exp(d.log_h - max_log);
    // sum w / max w after the shift; a single draw is trivially self-normalized.
    if (draws.size() > 1 && sum_w < 2.0)
        throw DegenerateWeights("importance weights collapsed: sum w / max w = " +
                                std::to_string(sum_w));

    ParamEstimates est;
    const auto weighted_mean = [&](auto&& g) {
        double acc = 0.0;
        for (const WeightedDraw& d : draws) acc += g(d) * std::exp(d.log_h - max_log);
        return acc / sum_w;
    };
    if (loss.is_self()) {
        est.theta1 = weighted_mean([](const WeightedDraw& d) { return d.theta1; });
        est.theta2 = weighted_mean([](const WeightedDraw& d) { return d.theta2; });
        est.p = weighted_mean([](const WeightedDraw& d) { return d.p; });
    } else {
        const double c = loss.c;
        est.theta1 = std::pow(
            weighted_mean([&](const WeightedDraw& d) { return std::pow(d.theta1, -c); }),
            -1.0 / c);
        est.theta2 = std::pow(
            weighted_mean([&](const WeightedDraw& d) { return std::pow(d.theta2, -c); }),
            -1.0 / c);
        est.p = std::pow(
            weighted_mean([&](const WeightedDraw& d) { return std::pow(d.p, -c); }),
            -1.0 / c);
    }
    return est;
}

double effective_sample_size(std::span<const WeightedDraw> draws) {
    if (draws.empty()) return 0.0;
    double max_log = draws[0].log_h;
    for (const WeightedDraw& d : draws) max_log = std::max(max_log, d.log_h);
    double sum = 0.0, sum_sq = 0.0;
    for (const WeightedDraw& d : draws) {
        const double w = std::exp(d.log_h - max_log);
        sum += w;
        sum_sq += w * w;
    }
    return sum * sum / sum_sq;
}

}  // namespace explomax

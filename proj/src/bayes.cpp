#include "explomax/bayes.hpp"

#include <cmath>
#include <string>

namespace explomax {

double loss_value(const LossSpec& loss, double estimate, double truth) {
    if (loss.is_self()) {
        const double d = estimate - truth;
        return d * d;
    }
    if (loss.c == 0.0) throw InvalidLoss("GELF requires c != 0");
    if (!(truth > 0.0) || !(estimate > 0.0))
        throw InvalidLoss("GELF loss needs positive estimate and truth");
    const double ratio = estimate / truth;
    return std::pow(ratio, loss.c) - loss.c * std::log(ratio) - 1.0;
}

ParamEstimates bayes_self(const PosteriorExpansion& e) {
    return {e.moment(0, 1.0), e.moment(1, 1.0), e.moment(2, 1.0)};
}

ParamEstimates bayes_gelf(const PosteriorExpansion& e, double c) {
    if (c == 0.0) throw InvalidLoss("GELF requires c != 0");
    const char* prior_name = to_string(e.prior());
    if (!(e.rho1() - c > 0.0))
        throw GelfDomainError(std::string("GELF c = ") + std::to_string(c) + " under the " +
                              prior_name + " prior needs " +
                              (e.prior() == Prior::uniform ? "r1 + 1 - c" : "r1 - c") +
                              " > 0");
    if (!(e.rho2() - c > 0.0))
        throw GelfDomainError(std::string("GELF c = ") + std::to_string(c) + " under the " +
                              prior_name + " prior needs " +
                              (e.prior() == Prior::uniform ? "r2 + 1 - c" : "r2 - c") +
                              " > 0");
    if (!(e.terms().front().k + e.r1() + 1 - c > 0.0))
        throw GelfDomainError(std::string("GELF c = ") + std::to_string(c) +
                              " needs k + r1 + 1 - c > 0 for every expansion term");
    // {E(theta^-c)}^(-1/c), the 4.1 definition; the printed 1/c exponent in
    // the per-prior displays does not invert the expectation.
    const auto gelf_point = [&](int coord) {
        return std::exp(-std::log(e.moment(coord, -c)) / c);
    };
    return {gelf_point(0), gelf_point(1), gelf_point(2)};
}

std::array<double, 3> posterior_variance(const PosteriorExpansion& e) {
    std::array<double, 3> out{};
    for (int coord = 0; coord < 3; ++coord) {
        const double m1 = e.moment(coord, 1.0);
        out[coord] = e.moment(coord, 2.0) - m1 * m1;
    }
    return out;
}

}  // namespace explomax

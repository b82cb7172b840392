#pragma once

#include <array>

#include "explomax/errors.hpp"
#include "explomax/expansion.hpp"
#include "explomax/params.hpp"

namespace explomax {

// Loss selection. omega is fixed at 1 for GELF.
struct LossSpec {
    enum class Kind { self, gelf };
    Kind kind = Kind::self;
    double c = 0.0;  // GELF only, nonzero

    static LossSpec self() { return {Kind::self, 0.0}; }
    static LossSpec gelf(double c) {
        if (c == 0.0) throw InvalidLoss("GELF requires c != 0");
        return {Kind::gelf, c};
    }
    bool is_self() const { return kind == Kind::self; }
};

// Loss evaluated at (estimate, truth): squared error for SELF,
// (est/truth)^c - c ln(est/truth) - 1 for GELF.
double loss_value(const LossSpec& loss, double estimate, double truth);

// Posterior means (Bayes estimators under SELF) from the closed-form
// expansion sums.
ParamEstimates bayes_self(const PosteriorExpansion& expansion);

// Bayes estimators under GELF: {E(theta^-c)}^(-1/c). Throws GelfDomainError
// when a gamma or beta argument would be nonpositive, InvalidLoss for c = 0.
ParamEstimates bayes_gelf(const PosteriorExpansion& expansion, double c);

// Posterior variances E(theta^2) - {E(theta)}^2 per coordinate.
std::array<double, 3> posterior_variance(const PosteriorExpansion& expansion);

}  // namespace explomax

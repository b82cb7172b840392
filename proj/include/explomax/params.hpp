#pragma once

#include <stdexcept>
#include <string>

namespace explomax {

// Parameter point of the two-component exponential-Lomax mixture.
//
// theta1  exponential rate (per unit time)
// theta2  Lomax shape (dimensionless)
// p       mixing proportion of the exponential component, in (0, 1)
// delta   Lomax scale (time units), treated as a known constant
struct Params {
    double theta1 = 1.0;
    double theta2 = 1.0;
    double p = 0.5;
    double delta = 1.0;

    bool is_valid() const {
        return theta1 > 0.0 && theta2 > 0.0 && delta > 0.0 && p > 0.0 && p < 1.0;
    }

    void validate() const {
        if (!(theta1 > 0.0)) throw std::domain_error("theta1 must be positive");
        if (!(theta2 > 0.0)) throw std::domain_error("theta2 must be positive");
        if (!(delta > 0.0)) throw std::domain_error("delta must be positive");
        if (!(p > 0.0 && p < 1.0))
            throw std::domain_error("p must lie in the open interval (0, 1)");
    }
};

// Point estimate of the three free parameters (delta is known).
struct ParamEstimates {
    double theta1 = 0.0;
    double theta2 = 0.0;
    double p = 0.0;

    double operator[](int i) const { return i == 0 ? theta1 : i == 1 ? theta2 : p; }
};

}  // namespace explomax

#pragma once

#include <stdexcept>

namespace explomax {

// Posterior normalizing constant does not exist for the given sample/prior.
struct ImproperPosterior : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A GELF positivity constraint (gamma argument or beta argument) is violated.
struct GelfDomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Loss configuration is invalid (GELF with c = 0).
struct InvalidLoss : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Importance-sampling proposal has a nonpositive gamma shape or rate.
struct ImproperProposal : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Importance weights collapsed onto too few draws to be usable.
struct DegenerateWeights : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Observed information matrix is not invertible at the given point.
struct SingularInformation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A fit was requested on a sample with no observed failures in a component.
struct NoFailures : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace explomax

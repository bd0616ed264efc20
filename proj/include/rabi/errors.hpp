#pragma once

#include <stdexcept>
#include <string>

namespace rabi {

// Parameter tuple violates the owning type's invariants.
struct InvalidParams : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Truncation size below the builder's minimum.
struct InvalidTruncation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Parity sector requested on a model that does not conserve photon parity,
// or a sector-specific quantity asked for on the full space.
struct ParityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Parameters outside the regime where an operation is defined
// (e.g. |g| >= 1/2 for the two-photon degeneracy condition).
struct RegimeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// No NCHO preimage exists for a two-photon eigenvalue with |mu| <= |Delta|.
struct ObstructionError : std::domain_error {
    using std::domain_error::domain_error;
};

// Dense/banded eigensolver failure or a certificate that could not be met.
struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace rabi

#pragma once

#include <stdexcept>

namespace ellsum {

/// Malformed caller input: dimension mismatches, non-positive weights,
/// unparseable files.
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A matrix required to be symmetric positive definite failed its
/// Cholesky factorization (or is too close to singular to use).
struct NotPositiveDefinite : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The bounding family produced an indefinite shape matrix, which can
/// only happen when the stacked transformation matrices are rank
/// deficient (the problem was not preprocessed).
struct AssumptionViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An optimizer iterate drove the family numerically singular; the
/// volume objective is unbounded below in that regime.
struct DegenerateFamily : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ellsum

#pragma once

#include <stdexcept>
#include <string>

namespace floqlab {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid user input: malformed documents, inconsistent matrices,
/// out-of-range parameters, incompatible cutoffs.
struct ConfigError : Error {
    using Error::Error;
};

/// Numerical failure inside a solver: unitarity loss, harmonic-space
/// truncation too tight, non-diagonalizable propagator.
struct SolverError : Error {
    using Error::Error;
};

/// A symmetry-analysis step could not classify its input (eigenvalue
/// snapping failed, no admissible partner found).
struct SymmetryError : Error {
    using Error::Error;
};

/// A symmetry-based prediction was requested outside the regime where the
/// underlying selection rule applies. The message lists every failed
/// precondition.
struct InapplicabilityError : Error {
    using Error::Error;
};

} // namespace floqlab

#pragma once

#include <stdexcept>
#include <string>

namespace reptile {

/// Base class of every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation
/// (negative quantum number, point outside the domain, zero odd core, ...).
struct DomainError : Error {
  using Error::Error;
};

/// gamma^(2k) v left the ring Z[gamma^2] for k < 0.
struct DivisibilityError : Error {
  using Error::Error;
};

/// Folding applied to an odd quantum number / eigenvalue.
struct FoldParityError : Error {
  using Error::Error;
};

/// Query at or above the cutoff a spectrum index was built with.
struct OutOfRangeError : Error {
  using Error::Error;
};

/// A value that was expected to be an eigenvalue is not one.
struct InvalidEigenvalueError : Error {
  using Error::Error;
};

/// Requested case is outside what a closed form or identity covers.
struct UnsupportedError : Error {
  using Error::Error;
};

/// Flood-fill partition count changed under refinement.
struct ResolutionError : Error {
  using Error::Error;
};

/// Grid nodal count did not stabilise within the allowed doublings.
struct InstabilityError : Error {
  using Error::Error;
};

/// A witness that a classification relies on failed to verify.
struct ConsistencyError : Error {
  using Error::Error;
};

}  // namespace reptile

#pragma once

#include <stdexcept>
#include <string>

namespace sprlat {

/// Inputs violate an operation's precondition (bad parameters, wrong sizes,
/// dependent vectors, ...). Nothing was computed.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A postcondition that the construction guarantees was measured to fail.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Hilbert-norm fit could not reach the acceptance distortion.
class FitFailure : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

}  // namespace sprlat

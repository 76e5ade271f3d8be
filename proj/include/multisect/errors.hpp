#pragma once

#include <stdexcept>
#include <string>

namespace multisect {

// Base of all library errors. The CLI maps the concrete kind to an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-domain input (bad file, bad argument, failed precondition).
class InputError : public Error {
 public:
  using Error::Error;
};

// Inconsistent algebraic input, e.g. a lattice that is not contained in another.
class InconsistentInputError : public InputError {
 public:
  using InputError::InputError;
};

// Incidence data that does not have the required shape (e.g. a Hesse configuration).
class ConfigurationError : public InputError {
 public:
  using InputError::InputError;
};

// A numerical procedure could not certify its result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// The curve is singular, or its flexes are not simple within tolerance.
class SmoothnessError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Path tracking failed (step underflow, matching margin, integrity mismatch).
class TrackingError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace multisect

#pragma once

#include <stdexcept>
#include <string>

namespace levylab {

// Error taxonomy, mirrored by the C API status codes:
//   ConfigError, ArgumentError      -> 1
//   NumericalError, DiscretizationError -> 2
//   QualityError                    -> 3
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument to an operation (precondition violated).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent configuration input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Quadrature/bisection/linear-solve failure, divergent integral, overflow.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Discrete scheme violated a structural property (e.g. maximum principle).
class DiscretizationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Result exists but fails a quality gate (censoring, inconclusive verdict).
class QualityError : public Error {
 public:
  using Error::Error;
};

}  // namespace levylab

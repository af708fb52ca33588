#pragma once

#include <stdexcept>
#include <string>

namespace kahler {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition or type invariant was violated by the caller.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// A weight in a norm formula degenerates (division by d - 1 with d = 1).
class DegenerateWeightError : public ContractError {
 public:
  using ContractError::ContractError;
};

/// Input files or run configuration could not be parsed or validated.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure: non-finite integrands, singular matrices and the like.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A sampled point is (numerically) a singular point of the variety.
class SingularityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// An iterative solver (root finder, Newton corrector) did not converge.
class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace kahler

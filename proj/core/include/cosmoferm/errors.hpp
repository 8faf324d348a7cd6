#pragma once

#include <stdexcept>
#include <string>

namespace cosmoferm {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a function (profile chart, block bounds,
/// probability range).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Failures of a numerical procedure on otherwise valid input. The CLI maps
/// these to exit code 2.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class DegenerateGroundStateError : public NumericalError {
 public:
  DegenerateGroundStateError(const std::string& what, double momentum)
      : NumericalError(what), momentum_(momentum) {}
  double momentum() const noexcept { return momentum_; }

 private:
  double momentum_;
};

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Purity drift during integration; the step is too large for the spectrum.
class StepSizeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Correlation matrix whose spectrum leaves [0, 1].
class InvalidStateError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// An expectation value that must be real came out complex.
class ConsistencyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Condensates still oscillate inside the averaging window.
class NotEquilibratedError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace cosmoferm

#pragma once

#include <stdexcept>
#include <string>

namespace alc {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in incompatible variable or extension contexts.
class ContextError : public Error {
 public:
  using Error::Error;
};

/// A parameter or argument lies outside the admissible domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A stated precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Numerical procedure failed (non-convergence, step underflow, ...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class IntegrationFailure : public NumericalError {
 public:
  IntegrationFailure(const std::string& what, double t, double x, double y)
      : NumericalError(what), t_(t), x_(x), y_(y) {}
  double t() const { return t_; }
  double x() const { return x_; }
  double y() const { return y_; }

 private:
  double t_, x_, y_;
};

class NoOrbitError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularSampleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Malformed textual input (polynomial strings, CLI ranges).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace alc

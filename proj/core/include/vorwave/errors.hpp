#pragma once

#include <stdexcept>
#include <string>

namespace vorwave {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the admissible range of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The physical model has no answer for the given input.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// A quantity the model divides by vanishes.
class DegeneracyError : public ModelError {
 public:
  using ModelError::ModelError;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class NonConvergenceError : public NumericError {
 public:
  NonConvergenceError(const std::string& what, double last_residual, int iterations)
      : NumericError(what), last_residual_(last_residual), iterations_(iterations) {}

  double last_residual() const noexcept { return last_residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double last_residual_;
  int iterations_;
};

class AdmissibilityError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// The conformal gradient |grad eta| degenerated.
class ConformalityError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Sparse factorization failed; at a branch point this is the fold signal.
class SingularJacobianError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace vorwave

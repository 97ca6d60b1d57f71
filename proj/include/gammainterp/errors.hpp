#pragma once

#include <stdexcept>
#include <string>

namespace gammainterp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold (bad input).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Evaluation of Phi hit its excluded point z*s = 2.
class PolePointError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A 2x2 spectral datum is a scalar matrix, where the reduction to Gamma data is not equivalent.
class ScalarMatrixError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A 2x2 spectral datum has spectral radius above 1 (its (tr, det) lies outside Gamma).
class SpectralRadiusError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A numerical routine failed (non-convergence, verification mismatch).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace gammainterp

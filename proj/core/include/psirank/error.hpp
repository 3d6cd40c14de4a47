#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace psirank {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied data that violates a documented precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// An iterative method stopped at its iteration cap.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual, std::size_t iterations)
      : Error(what), residual_(residual), iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  std::size_t iterations_;
};

/// (I - A) could not be factorized: the propagation matrix has spectral radius 1.
class SingularSystemError : public Error {
 public:
  using Error::Error;
};

}  // namespace psirank

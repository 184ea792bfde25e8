#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace liedg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands belong to different groups (or have incompatible dimensions).
class KindMismatch : public Error {
 public:
  using Error::Error;
};

/// Input lies outside the domain of a map: log off the principal branch,
/// dexp^{-1} beyond its singularity radius, antipodal sphere points, a
/// singular matrix, etc. Usually the caller should shrink the step size.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A nonlinear solve did not reach its tolerance.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double residual, int iterations)
      : Error(what + " (residual " + std::to_string(residual) + " after " +
              std::to_string(iterations) + " iterations)"),
        base_(what),
        residual_(residual),
        iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

  /// Same failure with a context prefix such as "step 17: ".
  SolverError with_prefix(const std::string& prefix) const {
    return SolverError(prefix + base_, residual_, iterations_);
  }

 private:
  std::string base_;
  double residual_;
  int iterations_;
};

/// A group or manifold constraint (unit norm, det F > 0) was violated.
class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

/// Malformed experiment description (unknown problem, bad step list, ...).
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

}  // namespace liedg

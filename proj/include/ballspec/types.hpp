#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace ballspec {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

inline constexpr double kPi = std::numbers::pi;

/// Invalid numeric parameter (Jacobi exponents, truncations, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was called on an object of the wrong kind or in the wrong state.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A shifted linear solve failed its residual check.
class SolverError : public NumericalError {
 public:
  SolverError(const std::string& what, double residual)
      : NumericalError(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class ContourError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace ballspec

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace kelvin {

using Complex = std::complex<double>;

/// Truncation control shared by every power series in the library.
struct SeriesConfig {
  double rel_tol = 1e-15;
  int max_terms = 500;

  void validate() const;
};

/// Value of a series or quadrature evaluation together with its error
/// estimate and diagnostics.
///
/// `abs_err` is the truncation (or rule-difference) estimate. `max_term` is
/// the largest partial contribution seen, so `max_term * eps` bounds the
/// rounding error lost to cancellation.
struct EvalResult {
  Complex value{};
  double abs_err = 0.0;
  int terms = 0;
  bool converged = true;
  double max_term = 0.0;

  // Set when the value was obtained by Richardson extrapolation across an
  // excluded order; `deltas` are the half-widths used.
  bool extrapolated = false;
  double deltas[2] = {0.0, 0.0};

  double real() const { return value.real(); }
  double imag() const { return value.imag(); }
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;

  /// Class name, for messages such as "DomainError: ...".
  virtual const char* kind() const noexcept { return "Error"; }
};

/// Argument at a pole of gamma/digamma.
class PoleError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "PoleError"; }
};

class OverflowError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "OverflowError"; }
};

/// A hypergeometric lower parameter is a nonpositive integer.
class DenominatorPoleError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "DenominatorPoleError"; }
};

/// z = 0 with negative order: z^nu has no finite principal value.
class BranchError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "BranchError"; }
};

class ArgumentZeroError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "ArgumentZeroError"; }
};

/// A closed form was called at an order where it degenerates.
class OrderClassError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "OrderClassError"; }
};

/// Argument outside the mathematical domain of the function.
class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "DomainError"; }
};

class ConfigError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "ConfigError"; }
};

}  // namespace kelvin

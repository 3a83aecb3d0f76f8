#pragma once

#include "kelvin/types.hpp"

namespace kelvin {

/// Declared accuracy envelope; outside it results are flagged `degraded`.
inline constexpr double kKelvinMaxX = 20.0;
inline constexpr double kKelvinMaxOrder = 10.0;

struct KelvinQuad {
  double ber = 0.0;
  double bei = 0.0;
  double ker = 0.0;
  double kei = 0.0;
  double nu = 0.0;
  double x = 0.0;
  double err_bb = 0.0;
  double err_kk = 0.0;
  bool degraded = false;
};

bool outside_envelope(double nu, double x);

// The pair functions return value = f + i g, so ber = real(), bei = imag().
// `abs_err` includes a rounding allowance for the cancellation recorded in
// `max_term`.

/// ber_nu(x) + i bei_nu(x) = e^{i pi nu} J_nu(e^{-i pi/4} x), x >= 0.
/// Negative order goes through the reflection formula, which needs ker/kei
/// and therefore raises DomainError at x = 0 unless nu is an integer.
EvalResult kelvin_ber_bei(double nu, double x, const SeriesConfig& cfg = {});

/// ker_nu(x) + i kei_nu(x) = e^{-i pi nu/2} K_nu(e^{i pi/4} x), x > 0.
EvalResult kelvin_ker_kei(double nu, double x, const SeriesConfig& cfg = {});

/// All four values at one point; requires x > 0.
KelvinQuad kelvin_all(double nu, double x, const SeriesConfig& cfg = {});

}  // namespace kelvin

#pragma once

// Long double building blocks for kernels whose double forms cancel badly:
// K and dK/dnu built from I_{+-nu} lose about log10(|I| / |K|) digits, which
// reaches 6 at |z| = 10.

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <complex>
#include <vector>

#include "kelvin/types.hpp"

namespace kelvin::detail {

using ld = long double;
using Cld = std::complex<ld>;

inline constexpr ld kPiLd = 3.141592653589793238462643383279502884L;
inline constexpr ld kEulerGammaLd = 0.5772156649015328606065120900824024310L;

// Extended results report max_term scaled by this ratio, so the usual
// double bound max_term * eps still describes their rounding error.
inline constexpr double kLdEpsRatio = static_cast<double>(LDBL_EPSILON / DBL_EPSILON);

ld gamma_ld(ld x);
ld rgamma_ld(ld x);
ld digamma_ld(ld x);
ld sinpi_ld(ld x);
ld cospi_ld(ld x);

struct ResultLd {
  Cld value{};
  ld abs_err = 0;
  ld max_term = 0;
  int terms = 0;
  bool converged = true;
};

/// pFq in long double. rel_tol is tightened by LDBL_EPSILON / DBL_EPSILON so
/// truncation stays below the extended rounding level.
ResultLd pfq_ld(const std::vector<ld>& upper, const std::vector<ld>& lower, Cld z,
                const SeriesConfig& cfg);

inline EvalResult to_double(const ResultLd& r) {
  EvalResult out;
  out.value = {static_cast<double>(r.value.real()), static_cast<double>(r.value.imag())};
  out.abs_err = static_cast<double>(r.abs_err);
  out.max_term = std::max(static_cast<double>(r.max_term) * kLdEpsRatio, std::abs(out.value));
  out.terms = r.terms;
  out.converged = r.converged;
  return out;
}

}  // namespace kelvin::detail

#include "kelvin/bessel.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <functional>

#include <fmt/format.h>

#include "extended.hpp"
#include "float128.hpp"
#include "kelvin/hyper.hpp"
#include "kelvin/scalars.hpp"
#include "kelvin/summation.hpp"

namespace kelvin {

namespace {

// (z/2)^p on the principal branch.
Complex half_power(Complex z, double p) { return std::exp(p * std::log(z / 2.0)); }

// Ascending series for J (sign = -1) or I (sign = +1).
EvalResult ascending(double nu, Complex z, double sign, const SeriesConfig& cfg) {
  if (z == Complex{}) {
    if (nu < 0.0) {
      throw BranchError(fmt::format("bessel: z = 0 with negative order {}", nu));
    }
    EvalResult out;
    out.value = nu == 0.0 ? 1.0 : 0.0;
    out.terms = 1;
    out.max_term = std::abs(out.value);
    return out;
  }
  if (nu < 0.0 && std::floor(nu) == nu) {
    // J_{-m} = (-1)^m J_m and I_{-m} = I_m.
    EvalResult out = ascending(-nu, z, sign, cfg);
    const bool odd = std::fmod(-nu, 2.0) == 1.0;
    if (sign < 0.0 && odd) {
      out.value = -out.value;
    }
    return out;
  }
  const Complex prefactor = half_power(z, nu) * rgamma_real(nu + 1.0);
  const EvalResult series = pfq({{}, {nu + 1.0}, sign * z * z / 4.0}, cfg);
  EvalResult out = series;
  const double scale = std::abs(prefactor);
  out.value = prefactor * series.value;
  out.abs_err = scale * series.abs_err;
  out.max_term = scale * series.max_term;
  return out;
}

void require_nonzero(Complex z, const char* who) {
  if (z == Complex{}) {
    throw ArgumentZeroError(fmt::format("{}: argument z must be nonzero", who));
  }
}

using detail::Cld;
using detail::ld;
using detail::ResultLd;

ld tight_tol(const SeriesConfig& cfg) {
  return static_cast<ld>(cfg.rel_tol) * (LDBL_EPSILON / DBL_EPSILON);
}

Cld to_ld(Complex z) { return {z.real(), z.imag()}; }

// I_nu(z) in long double, z != 0.
ResultLd bessel_i_ld(ld nu, Cld z, const SeriesConfig& cfg) {
  if (nu < 0 && std::floor(nu) == nu) {
    return bessel_i_ld(-nu, z, cfg);
  }
  const Cld prefactor = std::exp(nu * std::log(z / 2.0L)) * detail::rgamma_ld(nu + 1.0L);
  ResultLd out = detail::pfq_ld({}, {nu + 1.0L}, z * z / 4.0L, cfg);
  const ld scale = std::abs(prefactor);
  out.value *= prefactor;
  out.abs_err *= scale;
  out.max_term *= scale;
  return out;
}

// K_n(z) for integer n >= 0 from the logarithmic ascending series.
ResultLd bessel_k_integer_ld(long n, Cld z, const SeriesConfig& cfg) {
  const Cld log_half = std::log(z / 2.0L);
  const Cld q = z * z / 4.0L;
  const ld nl = static_cast<ld>(n);

  // Finite part: (1/2)(z/2)^{-n} sum_{k<n} (n-k-1)!/k! (-q)^k
  Cld finite_part{};
  if (n > 0) {
    BasicCompensatedComplexSum<ld> finite;
    Cld term = detail::gamma_ld(nl);  // (n-1)!/0!
    for (long k = 0; k < n; ++k) {
      finite.add(term);
      if (k + 1 < n) {
        term *= -q / static_cast<ld>((k + 1) * (n - k - 1));
      }
    }
    finite_part = 0.5L * std::exp(-nl * log_half) * finite.value();
  }

  const ResultLd in = bessel_i_ld(nl, z, cfg);
  const ld sign_n = (n % 2 == 0) ? 1.0L : -1.0L;
  const Cld log_part = -sign_n * log_half * in.value;

  // Infinite part: (-1)^n (1/2)(z/2)^n sum (psi(k+1)+psi(n+k+1)) q^k / (k!(n+k)!)
  const ld rel_tol = tight_tol(cfg);
  BasicCompensatedComplexSum<ld> tail;
  Cld term = detail::rgamma_ld(nl + 1.0L);
  ld psi_k = -detail::kEulerGammaLd;
  ld psi_nk = detail::digamma_ld(nl + 1.0L);
  ld max_term = 0;
  bool previous_small = false;
  bool converged = false;
  int terms = 0;
  Cld next{};
  for (int k = 0; k < cfg.max_terms; ++k) {
    const Cld contrib = (psi_k + psi_nk) * term;
    tail.add(contrib);
    max_term = std::max(max_term, std::abs(contrib));
    const ld ratio = 1.0L / ((k + 1.0L) * (nl + k + 1.0L));
    next = term * q * ratio;
    const bool small = 10 * std::abs(contrib) <= rel_tol * std::abs(tail.value());
    terms = k + 1;
    if (small && previous_small && ratio * std::abs(q) < 1) {
      converged = true;
      break;
    }
    previous_small = small;
    psi_k += 1.0L / (k + 1.0L);
    psi_nk += 1.0L / (nl + k + 1.0L);
    term = next;
  }
  const Cld scale = sign_n * 0.5L * std::exp(nl * log_half);
  const Cld tail_part = scale * tail.value();

  ResultLd out;
  out.value = finite_part + log_part + tail_part;
  out.terms = terms + in.terms;
  out.converged = converged && in.converged;
  out.abs_err = std::abs(log_half) * in.abs_err +
                std::abs(scale) * 10 * std::abs(next) * (std::abs(psi_k) + std::abs(psi_nk) + 1);
  out.max_term = std::max({std::abs(finite_part), std::abs(log_half) * in.max_term,
                           std::abs(scale) * max_term});
  return out;
}

// dK_nu/dnu at nu = n >= 0:  (n!/2)(z/2)^{-n} sum_{k<n} (z/2)^k K_k(z) / (k!(n-k)).
ResultLd dk_dnu_integer_ld(long n, Cld z, const SeriesConfig& cfg) {
  ResultLd out;
  if (n == 0) {
    return out;
  }
  BasicCompensatedComplexSum<ld> sum;
  const Cld log_half = std::log(z / 2.0L);
  for (long k = 0; k < n; ++k) {
    const ResultLd kk = bessel_k_integer_ld(k, z, cfg);
    // (n!/2) (z/2)^{k-n} / (k! (n-k))
    const Cld coeff = 0.5L * std::exp(static_cast<ld>(k - n) * log_half) *
                      (detail::rgamma_ld(k + 1.0L) / detail::rgamma_ld(n + 1.0L)) /
                      static_cast<ld>(n - k);
    sum.add(coeff * kk.value);
    out.abs_err += std::abs(coeff) * kk.abs_err;
    out.max_term = std::max(out.max_term, std::abs(coeff) * kk.max_term);
    out.converged = out.converged && kk.converged;
    out.terms += kk.terms;
  }
  out.value = sum.value();
  return out;
}

// K_nu = (pi/2)(I_{-nu} - I_nu)/sin(pi nu) for non-integer nu > 0.
ResultLd bessel_k_connection_ld(ld nu, Cld z, const SeriesConfig& cfg) {
  const ResultLd i_minus = bessel_i_ld(-nu, z, cfg);
  const ResultLd i_plus = bessel_i_ld(nu, z, cfg);
  const ld scale = detail::kPiLd / 2.0L / detail::sinpi_ld(nu);
  ResultLd out;
  out.value = scale * (i_minus.value - i_plus.value);
  out.abs_err = std::fabs(scale) * (i_minus.abs_err + i_plus.abs_err);
  out.max_term = std::fabs(scale) * std::max({i_minus.max_term, i_plus.max_term,
                                              std::abs(i_minus.value), std::abs(i_plus.value)});
  out.terms = i_minus.terms + i_plus.terms;
  out.converged = i_minus.converged && i_plus.converged;
  return out;
}

// Near an integer the connection formula loses ~eps |I| / |sin(pi nu)|.
// Within the window, K is a cubic in d = nu - n through K_n, dK/dnu|_n (both
// exact) and K at n +- kKStep, whose errors enter scaled by (d / kKStep)^2.
constexpr double kKNearWindow = 5e-4;
constexpr ld kKStep = 1e-3L;

ResultLd bessel_k_ld(double nu, Cld z, const SeriesConfig& cfg) {
  long n = 0;
  if (!near_integer(nu, kKNearWindow, &n)) {
    return bessel_k_connection_ld(nu, z, cfg);
  }
  ResultLd out = bessel_k_integer_ld(n, z, cfg);
  const ld d = static_cast<ld>(nu) - static_cast<ld>(n);
  if (d == 0) {
    return out;
  }
  const ResultLd slope = dk_dnu_integer_ld(n, z, cfg);
  const ld nl = static_cast<ld>(n);
  const ResultLd up = bessel_k_connection_ld(nl + kKStep, z, cfg);
  // K is even in nu, so K_{-kKStep} = K_{kKStep} at n = 0.
  const ResultLd down = n == 0 ? up : bessel_k_connection_ld(nl - kKStep, z, cfg);
  const Cld c2 = (up.value + down.value - 2.0L * out.value) / (2.0L * kKStep * kKStep);
  const Cld c3 =
      (up.value - down.value - 2.0L * kKStep * slope.value) / (2.0L * kKStep * kKStep * kKStep);
  const ld r = d / kKStep;
  out.value += d * slope.value + d * d * c2 + d * d * d * c3;
  out.abs_err += std::fabs(d) * slope.abs_err + r * r * (up.abs_err + down.abs_err);
  out.max_term = std::max({out.max_term, std::fabs(d) * slope.max_term, up.max_term, down.max_term});
  out.terms += slope.terms + up.terms + down.terms;
  out.converged = out.converged && slope.converged && up.converged && down.converged;
  return out;
}

// Closed form for dJ_nu/dnu; valid for any non-integer real nu.
EvalResult dj_closed(double nu, Complex z, const SeriesConfig& cfg) {
  const double csc = 1.0 / sinpi(nu);
  const double rg = rgamma_real(nu + 1.0);
  const Complex mz2 = -z * z;

  const EvalResult j_minus = bessel_j(-nu, z, cfg);
  const EvalResult j_plus = bessel_j(nu, z, cfg);
  const EvalResult f23 = pfq({{nu, nu + 0.5}, {nu + 1.0, nu + 1.0, 2.0 * nu + 1.0}, mz2}, cfg);
  const EvalResult f34 = pfq({{1.0, 1.0, 1.5}, {2.0, 2.0, 2.0 - nu, 2.0 + nu}, mz2}, cfg);

  const Complex c1 = -kPi * csc * rg * rg / 2.0 * std::exp(2.0 * nu * std::log(z / 2.0));
  const Complex first = c1 * j_minus.value * f23.value;

  const Complex c34 = z * z / (4.0 * (1.0 - nu * nu));
  const Complex bracket =
      c34 * f34.value - std::log(z / 2.0) + 1.0 / (2.0 * nu) + digamma_real(nu);
  const Complex second = j_plus.value * bracket;

  EvalResult out;
  out.value = first - second;
  out.abs_err = std::abs(c1) * (std::abs(j_minus.value) * f23.abs_err +
                                std::abs(f23.value) * j_minus.abs_err) +
                std::abs(bracket) * j_plus.abs_err +
                std::abs(j_plus.value) * std::abs(c34) * f34.abs_err;
  out.max_term = std::max({std::abs(first), std::abs(second),
                           std::abs(c1) * j_minus.max_term * f23.max_term,
                           std::abs(j_plus.value * c34) * f34.max_term});
  out.terms = j_minus.terms + j_plus.terms + f23.terms + f34.terms;
  out.converged = j_minus.converged && j_plus.converged && f23.converged && f34.converged;
  return out;
}

// dK_nu/dnu closed form in long double; valid for real nu with 2nu not an
// integer. The four parts cancel down to the size of K.
ResultLd dk_closed_ld(double nu_d, Complex zd, const SeriesConfig& cfg) {
  const ld nu = nu_d;
  const Cld z = to_ld(zd);
  const ld s = detail::sinpi_ld(nu);
  const ld csc = 1.0L / s;
  const ld cot = detail::cospi_ld(nu) / s;
  const Cld z2 = z * z;
  const Cld log_half = std::log(z / 2.0L);

  const ResultLd i_plus = bessel_i_ld(nu, z, cfg);
  const ResultLd i_minus = bessel_i_ld(-nu, z, cfg);
  const ResultLd f34 = detail::pfq_ld({1.0L, 1.0L, 1.5L}, {2.0L, 2.0L, 2.0L - nu, 2.0L + nu}, z2, cfg);
  const ResultLd f23p =
      detail::pfq_ld({nu, 0.5L + nu}, {1.0L + nu, 1.0L + nu, 1.0L + 2.0L * nu}, z2, cfg);
  const ResultLd f23m =
      detail::pfq_ld({-nu, 0.5L - nu}, {1.0L - nu, 1.0L - nu, 1.0L - 2.0L * nu}, z2, cfg);

  const Cld c34 = z2 / (4.0L * (1.0L - nu * nu));
  const Cld bracket = c34 * f34.value + log_half - detail::digamma_ld(nu) - 1.0L / (2.0L * nu);
  const Cld i_sum = i_plus.value + i_minus.value;
  const Cld cot_part = detail::kPiLd / 2.0L * csc * detail::kPiLd * cot * i_plus.value;
  const Cld log_part = detail::kPiLd / 2.0L * csc * i_sum * bracket;

  const ld g_minus = detail::gamma_ld(-nu);
  const ld g_plus = detail::gamma_ld(nu);
  const Cld c_plus = 0.25L * g_minus * g_minus * std::exp(2.0L * nu * log_half);
  const Cld c_minus = 0.25L * g_plus * g_plus * std::exp(-2.0L * nu * log_half);
  const Cld hyp_plus = c_plus * i_minus.value * f23p.value;
  const Cld hyp_minus = c_minus * i_plus.value * f23m.value;

  ResultLd out;
  out.value = cot_part - log_part + hyp_plus - hyp_minus;
  const ld k_csc = detail::kPiLd / 2.0L * std::fabs(csc);
  out.abs_err = k_csc * detail::kPiLd * std::fabs(cot) * i_plus.abs_err +
                k_csc * (std::abs(bracket) * (i_plus.abs_err + i_minus.abs_err) +
                         std::abs(i_sum * c34) * f34.abs_err) +
                std::abs(c_plus) * (std::abs(i_minus.value) * f23p.abs_err +
                                    std::abs(f23p.value) * i_minus.abs_err) +
                std::abs(c_minus) * (std::abs(i_plus.value) * f23m.abs_err +
                                     std::abs(f23m.value) * i_plus.abs_err);
  out.max_term = std::max({std::abs(cot_part), std::abs(log_part), std::abs(hyp_plus),
                           std::abs(hyp_minus), k_csc * std::abs(i_sum * c34) * f34.max_term,
                           std::abs(c_plus * i_minus.value) * f23p.max_term,
                           std::abs(c_minus * i_plus.value) * f23m.max_term});
  out.terms = i_plus.terms + i_minus.terms + f34.terms + f23p.terms + f23m.terms;
  out.converged = i_plus.converged && i_minus.converged && f34.converged && f23p.converged &&
                  f23m.converged;
  return out;
}

// Rounding in the long double form is about one ulp of the largest part
// (measured against 40-digit references); with a margin of 4, when that
// exceeds rel_tol |value| the closed form is redone in __float128.
constexpr ld kLdRoundingUlps = 4;

EvalResult dk_closed(double nu, Complex z, const SeriesConfig& cfg) {
  const ResultLd r = dk_closed_ld(nu, z, cfg);
  if (kLdRoundingUlps * LDBL_EPSILON * r.max_term <= cfg.rel_tol * std::abs(r.value)) {
    return detail::to_double(r);
  }
  return detail::dk_closed_f128(nu, z, cfg);
}

// Richardson extrapolation of a function with a removable singularity at
// `center`: A(d) = (f(c+d) + f(c-d))/2 = f(c) + O(d^2).
EvalResult extrapolate_across(double center, const std::function<EvalResult(double)>& f) {
  auto average = [&](double d, EvalResult& worst) {
    const EvalResult up = f(center + d);
    const EvalResult down = f(center - d);
    worst.abs_err = std::max({worst.abs_err, up.abs_err, down.abs_err});
    worst.max_term = std::max({worst.max_term, up.max_term, down.max_term});
    worst.terms += up.terms + down.terms;
    worst.converged = worst.converged && up.converged && down.converged;
    return 0.5 * (up.value + down.value);
  };
  EvalResult out;
  const Complex a1 = average(kExtrapDelta1, out);
  const Complex a2 = average(kExtrapDelta2, out);
  const double r = (kExtrapDelta1 * kExtrapDelta1) / (kExtrapDelta2 * kExtrapDelta2);
  out.value = (r * a2 - a1) / (r - 1.0);
  // The O(d^4) remainder is estimated from the size of the O(d^2) correction.
  const double correction = std::abs(out.value - a2);
  out.abs_err = out.abs_err * (r + 1.0) / (r - 1.0) + correction / r;
  out.extrapolated = true;
  out.deltas[0] = kExtrapDelta1;
  out.deltas[1] = kExtrapDelta2;
  return out;
}

}  // namespace

EvalResult bessel_j(double nu, Complex z, const SeriesConfig& cfg) {
  return ascending(nu, z, -1.0, cfg);
}

EvalResult bessel_i(double nu, Complex z, const SeriesConfig& cfg) {
  return ascending(nu, z, 1.0, cfg);
}

EvalResult bessel_k(double nu, Complex z, const SeriesConfig& cfg) {
  require_nonzero(z, "bessel_k");
  cfg.validate();
  return detail::to_double(bessel_k_ld(std::fabs(nu), to_ld(z), cfg));
}

EvalResult bessel(BesselKind kind, double nu, Complex z, const SeriesConfig& cfg) {
  switch (kind) {
    case BesselKind::J:
      return bessel_j(nu, z, cfg);
    case BesselKind::I:
      return bessel_i(nu, z, cfg);
    case BesselKind::K:
      return bessel_k(nu, z, cfg);
  }
  throw ConfigError("bessel: unknown kind");
}

EvalResult dj_dnu(double nu, Complex z, const SeriesConfig& cfg) {
  if (!(nu > 0.0) || near_integer(nu, kOrderClassTol)) {
    throw OrderClassError(
        fmt::format("dj_dnu: closed form needs nu > 0 and non-integer, got nu = {}", nu));
  }
  require_nonzero(z, "dj_dnu");
  return dj_closed(nu, z, cfg);
}

EvalResult dk_dnu(double nu, Complex z, const SeriesConfig& cfg) {
  if (!(nu > 0.0) || near_integer(2.0 * nu, kOrderClassTol)) {
    throw OrderClassError(fmt::format(
        "dk_dnu: closed form needs nu > 0 and 2nu non-integer, got nu = {}", nu));
  }
  require_nonzero(z, "dk_dnu");
  return dk_closed(nu, z, cfg);
}

EvalResult dj_dnu_any(double nu, Complex z, const SeriesConfig& cfg) {
  if (nu < 0.0) {
    throw OrderClassError(fmt::format("dj_dnu_any: nu must be >= 0, got {}", nu));
  }
  require_nonzero(z, "dj_dnu_any");
  long n = 0;
  if (near_integer(nu, kExcludedOrderWindow, &n)) {
    return extrapolate_across(static_cast<double>(n),
                              [&](double v) { return dj_closed(v, z, cfg); });
  }
  return dj_closed(nu, z, cfg);
}

EvalResult dk_dnu_any(double nu, Complex z, const SeriesConfig& cfg) {
  if (nu < 0.0) {
    throw OrderClassError(fmt::format("dk_dnu_any: nu must be >= 0, got {}", nu));
  }
  require_nonzero(z, "dk_dnu_any");
  long m = 0;
  if (near_integer(2.0 * nu, 2.0 * kExcludedOrderWindow, &m)) {
    if (m == 0) {
      EvalResult out;
      out.extrapolated = true;
      return out;
    }
    return extrapolate_across(static_cast<double>(m) / 2.0,
                              [&](double v) { return dk_closed(v, z, cfg); });
  }
  return dk_closed(nu, z, cfg);
}

}  // namespace kelvin

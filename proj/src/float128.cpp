#include "float128.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cfloat>
#include <initializer_list>

namespace kelvin::detail {

namespace {

using Q = __float128;
using Cq = __complex128;

const double kF128EpsRatio = static_cast<double>(FLT128_EPSILON) / DBL_EPSILON;

Q q(double v) { return static_cast<Q>(v); }

Cq make(Q re, Q im) {
  Cq z;
  __real__ z = re;
  __imag__ z = im;
  return z;
}

Q sinpi_q(Q x) {
  // Inputs are double orders; reduce modulo 2 before scaling by pi.
  Q r = fmodq(x, q(2.0));
  return sinq(M_PIq * r);
}

Q cospi_q(Q x) {
  Q r = fmodq(x, q(2.0));
  return cosq(M_PIq * r);
}

// B_2k / (2k) for k = 1..15, for psi(x) ~ log x - 1/(2x) - sum B_2k / (2k x^2k).
Q digamma_q(Q x) {
  static const Q kCoef[15] = {
      q(1.0) / 12,
      -q(1.0) / 120,
      q(1.0) / 252,
      -q(1.0) / 240,
      q(1.0) / 132,
      -q(691.0) / 32760,
      q(1.0) / 12,
      -q(3617.0) / 8160,
      q(43867.0) / 14364,
      -q(174611.0) / 6600,
      q(854513.0) / 3036,
      -q(236364091.0) / 65520,
      q(8553103.0) / 156,
      -q(23749461029.0) / 24360,
      q(8615841276005.0) / 429660,
  };
  Q shift = 0;
  if (x < q(0.5)) {
    // psi(x) = psi(1 - x) - pi cot(pi x)
    shift = -M_PIq * cospi_q(x) / sinpi_q(x);
    x = 1 - x;
  }
  while (x < 30) {
    shift -= 1 / x;
    x += 1;
  }
  const Q inv2 = 1 / (x * x);
  Q series = 0;
  for (int k = 14; k >= 0; --k) {
    series = series * inv2 + kCoef[k];
  }
  series *= inv2;
  return shift + logq(x) - 1 / (2 * x) - series;
}

Q norm_q(Cq z) { return crealq(z) * crealq(z) + cimagq(z) * cimagq(z); }

struct SumQ {
  Cq value = 0;
  Q abs_err = 0;
  Q max_term = 0;
  int terms = 0;
  bool converged = false;
};

// pFq by the term-ratio recursion; parameters are already validated by the
// caller's order class.
SumQ pfq_q(std::initializer_list<Q> upper, std::initializer_list<Q> lower, Cq z, Q rel_tol,
           int max_terms) {
  SumQ out;
  Cq sum = 0;
  Cq term = 1;
  bool previous_small = false;
  const Q abs_z = cabsq(z);
  const Q tol2 = rel_tol * rel_tol / 100;
  for (int k = 0; k < max_terms; ++k) {
    sum += term;
    // Squared magnitudes avoid a software sqrt per term.
    const Q term_mag2 = norm_q(term);
    out.max_term = std::max(out.max_term, term_mag2);
    Q num = 1;
    Q den = q(k) + 1;
    for (Q a : upper) num *= a + k;
    for (Q b : lower) den *= b + k;
    const Q ratio = num / den;
    const Cq next = term * (ratio * z);
    const bool small = term_mag2 <= tol2 * norm_q(sum);
    out.terms = k + 1;
    if (small && previous_small && fabsq(ratio) * abs_z < 1) {
      out.value = sum;
      out.abs_err = 10 * cabsq(next);
      out.converged = true;
      out.max_term = sqrtq(out.max_term);
      return out;
    }
    previous_small = small;
    term = next;
  }
  out.value = sum;
  out.abs_err = 10 * cabsq(term);
  out.max_term = sqrtq(out.max_term);
  return out;
}

// I_nu(z), z != 0, nu not a negative integer.
SumQ bessel_i_q(Q nu, Cq z, Q rel_tol, int max_terms) {
  const Cq prefactor = cexpq(nu * clogq(z / 2)) / tgammaq(nu + 1);
  SumQ out = pfq_q({}, {nu + 1}, z * z / 4, rel_tol, max_terms);
  const Q scale = cabsq(prefactor);
  out.value *= prefactor;
  out.abs_err *= scale;
  out.max_term *= scale;
  return out;
}

}  // namespace

EvalResult dk_closed_f128(double nu_d, Complex zd, const SeriesConfig& cfg) {
  const Q nu = nu_d;
  const Cq z = make(zd.real(), zd.imag());
  const Q rel_tol = q(cfg.rel_tol) * kF128EpsRatio;
  const int n = cfg.max_terms;

  const Q s = sinpi_q(nu);
  const Q csc = 1 / s;
  const Q cot = cospi_q(nu) / s;
  const Cq z2 = z * z;
  const Cq log_half = clogq(z / 2);

  const SumQ i_plus = bessel_i_q(nu, z, rel_tol, n);
  const SumQ i_minus = bessel_i_q(-nu, z, rel_tol, n);
  const SumQ f34 = pfq_q({1, 1, q(1.5)}, {2, 2, 2 - nu, 2 + nu}, z2, rel_tol, n);
  const SumQ f23p = pfq_q({nu, q(0.5) + nu}, {1 + nu, 1 + nu, 1 + 2 * nu}, z2, rel_tol, n);
  const SumQ f23m = pfq_q({-nu, q(0.5) - nu}, {1 - nu, 1 - nu, 1 - 2 * nu}, z2, rel_tol, n);

  const Cq c34 = z2 / (4 * (1 - nu * nu));
  const Cq bracket = c34 * f34.value + log_half - digamma_q(nu) - 1 / (2 * nu);
  const Cq i_sum = i_plus.value + i_minus.value;
  const Cq cot_part = M_PIq / 2 * csc * M_PIq * cot * i_plus.value;
  const Cq log_part = M_PIq / 2 * csc * i_sum * bracket;

  const Q g_minus = tgammaq(-nu);
  const Q g_plus = tgammaq(nu);
  const Cq c_plus = g_minus * g_minus / 4 * cexpq(2 * nu * log_half);
  const Cq c_minus = g_plus * g_plus / 4 * cexpq(-2 * nu * log_half);
  const Cq hyp_plus = c_plus * i_minus.value * f23p.value;
  const Cq hyp_minus = c_minus * i_plus.value * f23m.value;
  const Cq value = cot_part - log_part + hyp_plus - hyp_minus;

  const Q k_csc = M_PIq / 2 * fabsq(csc);
  const Q abs_err = k_csc * M_PIq * fabsq(cot) * i_plus.abs_err +
                    k_csc * (cabsq(bracket) * (i_plus.abs_err + i_minus.abs_err) +
                             cabsq(i_sum * c34) * f34.abs_err) +
                    cabsq(c_plus) * (cabsq(i_minus.value) * f23p.abs_err +
                                     cabsq(f23p.value) * i_minus.abs_err) +
                    cabsq(c_minus) * (cabsq(i_plus.value) * f23m.abs_err +
                                      cabsq(f23m.value) * i_plus.abs_err);
  const Q max_term = std::max({cabsq(cot_part), cabsq(log_part), cabsq(hyp_plus),
                               cabsq(hyp_minus), k_csc * cabsq(i_sum * c34) * f34.max_term,
                               cabsq(c_plus * i_minus.value) * f23p.max_term,
                               cabsq(c_minus * i_plus.value) * f23m.max_term});

  EvalResult out;
  out.value = {static_cast<double>(crealq(value)), static_cast<double>(cimagq(value))};
  out.abs_err = static_cast<double>(abs_err);
  out.max_term = std::max(static_cast<double>(max_term) * kF128EpsRatio, std::abs(out.value));
  out.terms = i_plus.terms + i_minus.terms + f34.terms + f23p.terms + f23m.terms;
  out.converged = i_plus.converged && i_minus.converged && f34.converged && f23p.converged &&
                  f23m.converged;
  return out;
}

}  // namespace kelvin::detail

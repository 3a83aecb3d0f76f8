#include "kelvin/kelvin.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "kelvin/bessel.hpp"
#include "kelvin/scalars.hpp"

namespace kelvin {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

const Complex kRotMinus = std::polar(1.0, -kPi / 4.0);
const Complex kRotPlus = std::polar(1.0, kPi / 4.0);

EvalResult rotate(const EvalResult& r, Complex phase) {
  EvalResult out = r;
  out.value = phase * r.value;
  out.abs_err = r.abs_err + 4.0 * kEps * r.max_term;
  return out;
}

EvalResult ber_bei_nonneg(double nu, double x, const SeriesConfig& cfg) {
  const EvalResult j = bessel_j(nu, kRotMinus * x, cfg);
  return rotate(j, {cospi(nu), sinpi(nu)});
}

EvalResult ker_kei_nonneg(double nu, double x, const SeriesConfig& cfg) {
  const EvalResult k = bessel_k(nu, kRotPlus * x, cfg);
  return rotate(k, {cospi(nu / 2.0), -sinpi(nu / 2.0)});
}

void require_x(double x, bool allow_zero, const char* who) {
  if (!(x > 0.0) && !(allow_zero && x == 0.0)) {
    throw DomainError(fmt::format("{}: x must be {} 0, got {}", who, allow_zero ? ">=" : ">", x));
  }
}

}  // namespace

bool outside_envelope(double nu, double x) {
  return x > kKelvinMaxX || std::fabs(nu) > kKelvinMaxOrder;
}

EvalResult kelvin_ber_bei(double nu, double x, const SeriesConfig& cfg) {
  require_x(x, true, "kelvin_ber_bei");
  if (nu >= 0.0) {
    return ber_bei_nonneg(nu, x, cfg);
  }
  // w_{-m} = e^{-i pi m} w_m + (2/pi) sin(pi m) (ker_m + i kei_m), m = -nu.
  const double m = -nu;
  const double s = sinpi(m);
  const EvalResult w = ber_bei_nonneg(m, x, cfg);
  EvalResult out = w;
  out.value = Complex{cospi(m), -s} * w.value;
  if (s != 0.0) {
    if (x == 0.0) {
      throw DomainError(fmt::format(
          "kelvin_ber_bei: order {} needs ker/kei, undefined at x = 0", nu));
    }
    const EvalResult k = ker_kei_nonneg(m, x, cfg);
    out.value += 2.0 / kPi * s * k.value;
    out.abs_err += 2.0 / kPi * std::fabs(s) * k.abs_err;
    out.terms += k.terms;
    out.converged = out.converged && k.converged;
  }
  return out;
}

EvalResult kelvin_ker_kei(double nu, double x, const SeriesConfig& cfg) {
  require_x(x, false, "kelvin_ker_kei");
  if (nu >= 0.0) {
    return ker_kei_nonneg(nu, x, cfg);
  }
  // k_{-m} = e^{i pi m} k_m
  const double m = -nu;
  EvalResult out = ker_kei_nonneg(m, x, cfg);
  out.value *= Complex{cospi(m), sinpi(m)};
  return out;
}

KelvinQuad kelvin_all(double nu, double x, const SeriesConfig& cfg) {
  require_x(x, false, "kelvin_all");
  // One J and one K evaluation at |nu|; negative order by reflection.
  const double m = std::fabs(nu);
  EvalResult w = ber_bei_nonneg(m, x, cfg);
  EvalResult k = ker_kei_nonneg(m, x, cfg);
  if (nu < 0.0) {
    const double s = sinpi(m);
    const double c = cospi(m);
    w.value = Complex{c, -s} * w.value + 2.0 / kPi * s * k.value;
    w.abs_err += 2.0 / kPi * std::fabs(s) * k.abs_err;
    k.value *= Complex{c, s};
  }
  KelvinQuad q;
  q.ber = w.real();
  q.bei = w.imag();
  q.ker = k.real();
  q.kei = k.imag();
  q.nu = nu;
  q.x = x;
  q.err_bb = w.abs_err;
  q.err_kk = k.abs_err;
  q.degraded = outside_envelope(nu, x) || !w.converged || !k.converged;
  return q;
}

}  // namespace kelvin

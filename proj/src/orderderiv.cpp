#include "kelvin/orderderiv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <fmt/format.h>

#include "kelvin/bessel.hpp"
#include "kelvin/hyper.hpp"
#include "kelvin/kelvin.hpp"
#include "kelvin/scalars.hpp"
#include "kelvin/summation.hpp"

namespace kelvin {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSinDropTol = 1e-12;

const Complex kRotMinus = std::polar(1.0, -kPi / 4.0);
const Complex kRotPlus = std::polar(1.0, kPi / 4.0);

double total_err(const EvalResult& r) { return r.abs_err + 4.0 * kEps * r.max_term; }

void require_positive_x(double x, const char* who) {
  if (!(x > 0.0)) {
    throw DomainError(fmt::format("{}: x must be > 0, got {}", who, x));
  }
}

EvalResult bb_pos(double nu, double x, bool allow_extrapolation, const SeriesConfig& cfg) {
  const Complex z = kRotMinus * x;
  const EvalResult dj = allow_extrapolation ? dj_dnu_any(nu, z, cfg) : dj_dnu(nu, z, cfg);
  const EvalResult w = kelvin_ber_bei(nu, x, cfg);
  const Complex t = Complex{cospi(nu), sinpi(nu)} * dj.value;
  EvalResult out = dj;
  out.value = {t.real() - kPi * w.imag(), t.imag() + kPi * w.real()};
  out.abs_err = total_err(dj) + kPi * w.abs_err;
  out.converged = dj.converged && w.converged;
  return out;
}

EvalResult kk_pos(double nu, double x, bool allow_extrapolation, const SeriesConfig& cfg) {
  const Complex z = kRotPlus * x;
  const EvalResult dk = allow_extrapolation ? dk_dnu_any(nu, z, cfg) : dk_dnu(nu, z, cfg);
  const EvalResult k = kelvin_ker_kei(nu, x, cfg);
  const Complex t = Complex{cospi(nu / 2.0), -sinpi(nu / 2.0)} * dk.value;
  EvalResult out = dk;
  out.value = {t.real() + kPi / 2.0 * k.imag(), t.imag() - kPi / 2.0 * k.real()};
  out.abs_err = total_err(dk) + kPi / 2.0 * k.abs_err;
  out.converged = dk.converged && k.converged;
  return out;
}

void merge_flags(EvalResult& out, const EvalResult& part) {
  out.converged = out.converged && part.converged;
  out.terms += part.terms;
  out.max_term = std::max(out.max_term, part.max_term);
  if (part.extrapolated) {
    out.extrapolated = true;
    out.deltas[0] = part.deltas[0];
    out.deltas[1] = part.deltas[1];
  }
}

DerivMethod tag_for(const EvalResult& r) {
  return r.extrapolated ? DerivMethod::extrapolated : DerivMethod::closed_form;
}

}  // namespace

std::string_view method_name(DerivMethod m) {
  switch (m) {
    case DerivMethod::closed_form:
      return "closed_form";
    case DerivMethod::integer_sum:
      return "integer_sum";
    case DerivMethod::extrapolated:
      return "extrapolated";
    case DerivMethod::reference_brychkov:
      return "reference_brychkov";
  }
  return "unknown";
}

std::string OrderDerivQuad::method() const {
  if (method_bb == method_kk) {
    return std::string(method_name(method_bb));
  }
  return fmt::format("{}|{}", method_name(method_bb), method_name(method_kk));
}

EvalResult dkelvin_bb_pos(double nu, double x, const SeriesConfig& cfg) {
  require_positive_x(x, "dkelvin_bb_pos");
  return bb_pos(nu, x, false, cfg);
}

EvalResult dkelvin_kk_pos(double nu, double x, const SeriesConfig& cfg) {
  require_positive_x(x, "dkelvin_kk_pos");
  return kk_pos(nu, x, false, cfg);
}

EvalResult dkelvin_bb_neg(double nu, double x, const SeriesConfig& cfg) {
  require_positive_x(x, "dkelvin_bb_neg");
  if (!(nu > 0.0)) {
    throw OrderClassError(fmt::format("dkelvin_bb_neg: nu must be > 0, got {}", nu));
  }
  // d/dnu [ber_{-nu} + i bei_{-nu}]
  //   = e^{-i pi nu/2} {(e^{-i pi nu} + cos pi nu) K_nu + (2/pi) sin(pi nu) K'_nu}
  //     + J'_nu,  K at e^{i pi/4} x, J' at e^{-i pi/4} x.
  const Complex zk = kRotPlus * x;
  const double s = sinpi(nu);
  const double c = cospi(nu);
  const EvalResult dj = dj_dnu_any(nu, kRotMinus * x, cfg);
  const EvalResult k = bessel_k(nu, zk, cfg);

  EvalResult out;
  Complex brace = (Complex{c, -s} + c) * k.value;
  double err = 2.0 * total_err(k) + total_err(dj);
  merge_flags(out, dj);
  merge_flags(out, k);
  if (std::fabs(s) >= kSinDropTol) {
    const EvalResult dk = dk_dnu_any(nu, zk, cfg);
    brace += 2.0 / kPi * s * dk.value;
    err += 2.0 / kPi * std::fabs(s) * total_err(dk);
    merge_flags(out, dk);
  }
  out.value = Complex{cospi(nu / 2.0), -sinpi(nu / 2.0)} * brace + dj.value;
  out.abs_err = err;
  return out;
}

EvalResult dkelvin_kk_neg(double nu, double x, const SeriesConfig& cfg) {
  require_positive_x(x, "dkelvin_kk_neg");
  if (!(nu > 0.0)) {
    throw OrderClassError(fmt::format("dkelvin_kk_neg: nu must be > 0, got {}", nu));
  }
  // d/dnu [ker_{-nu} + i kei_{-nu}] = e^{i pi nu/2} (i (pi/2) K_nu + K'_nu)
  const Complex zk = kRotPlus * x;
  const Complex phase{cospi(nu / 2.0), sinpi(nu / 2.0)};
  const EvalResult k = bessel_k(nu, zk, cfg);
  const EvalResult dk = dk_dnu_any(nu, zk, cfg);
  const Complex pk = phase * k.value;
  const Complex pdk = phase * dk.value;

  EvalResult out;
  merge_flags(out, k);
  merge_flags(out, dk);
  out.value = {-kPi / 2.0 * pk.imag() + pdk.real(), kPi / 2.0 * pk.real() + pdk.imag()};
  out.abs_err = kPi / 2.0 * total_err(k) + total_err(dk);
  return out;
}

OrderDerivQuad dkelvin_integer(long n, double x, const SeriesConfig& cfg) {
  require_positive_x(x, "dkelvin_integer");
  if (n < 0) {
    throw OrderClassError(fmt::format("dkelvin_integer: order {} is negative", n));
  }
  std::vector<EvalResult> w;
  std::vector<EvalResult> k;
  for (long j = 0; j <= n; ++j) {
    w.push_back(kelvin_ber_bei(static_cast<double>(j), x, cfg));
    k.push_back(kelvin_ker_kei(static_cast<double>(j), x, cfg));
  }
  const double ber_n = w[n].real();
  const double bei_n = w[n].imag();
  const double ker_n = k[n].real();
  const double kei_n = k[n].imag();

  CompensatedSum s_ber;
  CompensatedSum s_bei;
  CompensatedSum s_ker;
  CompensatedSum s_kei;
  s_ber.add(-kPi / 2.0 * bei_n);
  s_ber.add(-ker_n);
  s_bei.add(kPi / 2.0 * ber_n);
  s_bei.add(-kei_n);
  s_ker.add(kPi / 2.0 * kei_n);
  s_kei.add(-kPi / 2.0 * ker_n);

  double err_bb = kPi / 2.0 * w[n].abs_err + k[n].abs_err;
  double err_kk = kPi / 2.0 * k[n].abs_err;
  const double n_fact = 1.0 / rgamma_real(n + 1.0);
  for (long j = 0; j < n; ++j) {
    // (n!/2) (x/2)^{j-n} / (j! (n-j))
    const double coeff = n_fact / 2.0 * std::pow(x / 2.0, static_cast<double>(j - n)) *
                         rgamma_real(j + 1.0) / static_cast<double>(n - j);
    const double a5 = 5.0 * static_cast<double>(j - n) / 4.0;
    const double a3 = 3.0 * static_cast<double>(j - n) / 4.0;
    const double c5 = cospi(a5);
    const double s5 = sinpi(a5);
    const double c3 = cospi(a3);
    const double s3 = sinpi(a3);
    s_ber.add(coeff * (c5 * w[j].real() + s5 * w[j].imag()));
    s_bei.add(coeff * (c5 * w[j].imag() - s5 * w[j].real()));
    s_ker.add(coeff * (c3 * k[j].real() - s3 * k[j].imag()));
    s_kei.add(coeff * (s3 * k[j].real() + c3 * k[j].imag()));
    err_bb += 2.0 * coeff * (w[j].abs_err + k[j].abs_err);
    err_kk += 2.0 * coeff * k[j].abs_err;
  }

  OrderDerivQuad q;
  q.dber = s_ber.value();
  q.dbei = s_bei.value();
  q.dker = s_ker.value();
  q.dkei = s_kei.value();
  q.nu = static_cast<double>(n);
  q.x = x;
  q.method_bb = DerivMethod::integer_sum;
  q.method_kk = DerivMethod::integer_sum;
  q.err_estimate = std::max(err_bb, err_kk);
  return q;
}

namespace {

OrderDerivQuad closed_form_path(double nu, long n, double x, const SeriesConfig& cfg) {
  EvalResult bb;
  EvalResult kk;
  if (nu >= 0.0) {
    bb = bb_pos(nu, x, true, cfg);
    kk = kk_pos(nu, x, true, cfg);
  } else {
    // Negative order: the *_neg forms give d/dm of f_{-m} at m = -nu;
    // d f_mu / d mu at mu = nu is its negative.
    const double m = n < 0 ? static_cast<double>(-n) : -nu;
    bb = dkelvin_bb_neg(m, x, cfg);
    kk = dkelvin_kk_neg(m, x, cfg);
    bb.value = -bb.value;
    kk.value = -kk.value;
  }

  OrderDerivQuad q;
  q.dber = bb.real();
  q.dbei = bb.imag();
  q.dker = kk.real();
  q.dkei = kk.imag();
  q.nu = nu;
  q.x = x;
  q.method_bb = tag_for(bb);
  q.method_kk = tag_for(kk);
  q.err_estimate = std::max(bb.abs_err, kk.abs_err);
  return q;
}

}  // namespace

OrderDerivQuad dkelvin(double nu, double x, const SeriesConfig& cfg) {
  require_positive_x(x, "dkelvin");
  long n = 0;
  const bool integer = near_integer(nu, kOrderClassTol, &n);
  if (integer && n >= 0) {
    OrderDerivQuad q = dkelvin_integer(n, x, cfg);
    q.nu = nu;
    return q;
  }
  return closed_form_path(nu, integer ? n : 0, x, cfg);
}

OrderDerivQuad dkelvin_extrapolated(double nu, double x, const SeriesConfig& cfg) {
  require_positive_x(x, "dkelvin_extrapolated");
  long n = 0;
  const bool integer = near_integer(nu, kOrderClassTol, &n);
  if (integer && n == 0) {
    nu = 0.0;
  }
  return closed_form_path(nu, integer ? n : 0, x, cfg);
}

EvalResult coef_c(double nu, double x, int a, const SeriesConfig& cfg) {
  const double ad = a;
  const HyperSpec spec{
      {(2.0 * nu + ad + 1.0) / 4.0, (2.0 * nu + 3.0) / 4.0, (2.0 * nu + 5.0 * ad) / 4.0},
      {ad + 0.5, (nu + ad + 1.0) / 2.0, (nu + ad) / 2.0 + 1.0, (nu + ad) / 2.0 + 1.0,
       nu + (ad + 1.0) / 2.0, nu + 1.0 + ad / 2.0},
      -std::pow(x, 4) / 16.0};
  return pfq(spec, cfg);
}

EvalResult coef_d(double nu, double x, int a, const SeriesConfig& cfg) {
  const double ad = a;
  const HyperSpec spec{
      {(ad + 1.0) / 2.0, (ad + 1.0) / 2.0, (2.0 * ad + 3.0) / 4.0, (2.0 * ad + 5.0) / 4.0},
      {ad + 0.5, (ad + 3.0) / 2.0, (ad + 3.0) / 2.0, (nu + ad) / 2.0 + 1.0,
       (nu + ad + 3.0) / 2.0, (ad - nu) / 2.0 + 1.0, (ad - nu + 3.0) / 2.0},
      -std::pow(x, 4) / 16.0};
  return pfq(spec, cfg);
}

EvalResult dkelvin_bb_brychkov(double nu, double x, const SeriesConfig& cfg) {
  require_positive_x(x, "dkelvin_bb_brychkov");
  if (!(nu > 0.0) || near_integer(nu, kOrderClassTol)) {
    throw OrderClassError(fmt::format(
        "dkelvin_bb_brychkov: nu must be > 0 and non-integer, got {}", nu));
  }
  const EvalResult w = kelvin_ber_bei(nu, x, cfg);
  const EvalResult wm = kelvin_ber_bei(-nu, x, cfg);
  const double ber = w.real();
  const double bei = w.imag();
  const double ber_m = wm.real();
  const double bei_m = wm.imag();

  const EvalResult c0 = coef_c(nu, x, 0, cfg);
  const EvalResult c1 = coef_c(nu, x, 1, cfg);
  const EvalResult d0 = coef_d(nu, x, 0, cfg);
  const EvalResult d1 = coef_d(nu, x, 1, cfg);

  const double log_term = std::log(x / 2.0) - digamma_real(nu) - 1.0 / (2.0 * nu);
  const double s3 = sinpi(1.5 * nu);
  const double c3 = cospi(1.5 * nu);
  const double csc = 1.0 / sinpi(nu);
  const double rg1 = rgamma_real(nu + 1.0);
  const double rg2 = rgamma_real(nu + 2.0);
  const double big_a = kPi * csc / 2.0 * rg1 * rg1 * std::pow(x / 2.0, 2.0 * nu);
  const double big_b = kPi * nu * csc * rg2 * rg2 * std::pow(x / 2.0, 2.0 * nu + 2.0);
  const double big_d = x * x / (4.0 * (1.0 - nu * nu));
  const double big_e = 3.0 * x * x / (8.0 * (4.0 - nu * nu));

  const double dber = log_term * ber - 0.75 * kPi * bei +
                      big_a * (s3 * bei_m - c3 * ber_m) * c0.real() +
                      big_b * (c3 * bei_m + s3 * ber_m) * c1.real() -
                      big_d * (bei * d0.real() + big_e * ber * d1.real());
  const double dbei = log_term * bei + 0.75 * kPi * ber -
                      big_a * (c3 * bei_m + s3 * ber_m) * c0.real() -
                      big_b * (c3 * ber_m - s3 * bei_m) * c1.real() +
                      big_d * (ber * d0.real() - big_e * bei * d1.real());

  EvalResult out;
  out.value = {dber, dbei};
  const double mag_m = std::abs(wm.value);
  out.abs_err = (std::fabs(log_term) + kPi) * w.abs_err +
                (std::fabs(big_a) + std::fabs(big_b)) * (wm.abs_err + mag_m * (c0.abs_err + c1.abs_err)) +
                std::fabs(big_d) * std::abs(w.value) * (d0.abs_err + std::fabs(big_e) * d1.abs_err);
  out.terms = w.terms + wm.terms + c0.terms + c1.terms + d0.terms + d1.terms;
  out.converged = w.converged && wm.converged && c0.converged && c1.converged && d0.converged &&
                  d1.converged;
  out.max_term = std::max({c0.max_term, c1.max_term, d0.max_term, d1.max_term});
  return out;
}

}  // namespace kelvin

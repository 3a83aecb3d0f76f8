#include "kelvin/quad.hpp"

#include <cmath>
#include <queue>
#include <type_traits>
#include <vector>

#include <fmt/format.h>

#include "kelvin/bessel.hpp"
#include "kelvin/kelvin.hpp"
#include "kelvin/scalars.hpp"
#include "kelvin/summation.hpp"

namespace kelvin {

namespace {

// Gauss-Kronrod 7/15 nodes on [-1, 1] (non-negative half) and weights.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
// Gauss weights for the nodes kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

constexpr int kMapPower = 4;
constexpr int kMaxPanels = 20000;
constexpr int kMaxSemiInfPanels = 64;
constexpr double kNegligible = 1e-18;


// Panel sums and the map are carried in long double so the result's
// rounding floor is set by the integrand alone.
using ld = long double;
template <class T>
using Accum = std::conditional_t<std::is_same_v<T, double>, ld, std::complex<ld>>;

ld magnitude(ld v) { return std::fabs(v); }
ld magnitude(std::complex<ld> v) { return std::abs(v); }
bool finite(ld v) { return std::isfinite(v); }
bool finite(std::complex<ld> v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }
Complex narrow(std::complex<ld> v) {
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}
std::complex<ld> widen(ld v) { return {v, 0.0L}; }
std::complex<ld> widen(std::complex<ld> v) { return v; }

template <class T>
struct Panel {
  double s0;
  double s1;
  T value;
  double err;
  int depth;

  bool operator<(const Panel& other) const { return err < other.err; }
};

// Adaptive G7/K15 over [a, b] through the sigmoidal map on s in [0, 1].
template <class T, class F>
EvalResult integrate_core(const F& f, double a, double b, const QuadConfig& cfg) {
  using A = Accum<T>;
  cfg.validate();
  EvalResult out;
  if (!(a <= b)) {
    throw DomainError(fmt::format("integrate: need a <= b, got [{}, {}]", a, b));
  }
  if (a == b) {
    return out;
  }
  const ld width = static_cast<ld>(b) - static_cast<ld>(a);

  auto sample = [&](ld s, ld one_minus_s) -> A {
    const ld p = std::pow(s, kMapPower);
    const ld q = std::pow(one_minus_s, kMapPower);
    const ld d = p + q;
    const ld lo = width * (p / d);
    const ld hi = width * (q / d);
    const ld jac = width * kMapPower * std::pow(s * one_minus_s, kMapPower - 1) / (d * d);
    const Abscissa at{static_cast<double>(lo <= hi ? a + lo : b - hi), static_cast<double>(lo),
                      static_cast<double>(hi)};
    return static_cast<A>(f(at)) * jac;
  };

  auto evaluate = [&](double s0, double s1, int depth) {
    const ld half = 0.5L * (static_cast<ld>(s1) - s0);
    const ld upper_gap = 1.0L - s1;  // exact: panel ends are dyadic
    auto at = [&](ld xi) { return sample(s0 + half * (1.0L + xi), upper_gap + half * (1.0L - xi)); };
    const A center = at(0.0L);
    A kronrod = center * static_cast<ld>(kWgk[7]);
    A gauss = center * static_cast<ld>(kWg[3]);
    for (int j = 0; j < 7; ++j) {
      const A pair = at(-static_cast<ld>(kXgk[j])) + at(static_cast<ld>(kXgk[j]));
      kronrod += pair * static_cast<ld>(kWgk[j]);
      if (j % 2 == 1) {
        gauss += pair * static_cast<ld>(kWg[j / 2]);
      }
    }
    kronrod *= half;
    gauss *= half;
    return Panel<A>{s0, s1, kronrod, static_cast<double>(magnitude(kronrod - gauss)), depth};
  };

  std::priority_queue<Panel<A>> heap;
  heap.push(evaluate(0.0, 1.0, 0));
  A total = heap.top().value;
  double total_err = heap.top().err;
  int evaluations = 1;
  bool converged = false;

  while (true) {
    if (!finite(total) || !std::isfinite(total_err)) {
      break;
    }
    if (total_err <= std::max(cfg.abs_tol, cfg.rel_tol * static_cast<double>(magnitude(total)))) {
      converged = true;
      break;
    }
    if (heap.top().depth >= cfg.max_depth || evaluations >= kMaxPanels) {
      break;
    }
    const Panel<A> worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.s0 + worst.s1);
    const Panel<A> left = evaluate(worst.s0, mid, worst.depth + 1);
    const Panel<A> right = evaluate(mid, worst.s1, worst.depth + 1);
    evaluations += 2;
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
  }

  BasicCompensatedComplexSum<ld> sum;
  double err = 0.0;
  double largest = 0.0;
  while (!heap.empty()) {
    const std::complex<ld> v = widen(heap.top().value);
    sum.add(v);
    err += heap.top().err;
    largest = std::max(largest, static_cast<double>(std::abs(v)));
    heap.pop();
  }
  out.value = narrow(sum.value());
  out.abs_err = err;
  out.terms = evaluations * 15;
  out.converged = converged;
  out.max_term = largest;
  return out;
}


EvalResult integrate_cx(const std::function<Complex(const Abscissa&)>& f, double a, double b,
                        const QuadConfig& cfg) {
  return integrate_core<Complex>(f, a, b, cfg);
}

EvalResult integrate_semiinf_cx(const std::function<Complex(double)>& f, const QuadConfig& cfg) {
  cfg.validate();
  if (cfg.semiinf_rule == SemiInfRule::exp_map) {
    // t = -log(1 - s), dt = ds / (1 - s)
    return integrate_cx(
        [&](const Abscissa& at) {
          const double gap = at.from_upper;
          return f(-std::log(gap)) / gap;
        },
        0.0, 1.0, cfg);
  }
  EvalResult out;
  out.converged = false;
  CompensatedComplexSum sum;
  double lo = 0.0;
  double hi = 1.0;
  for (int panel = 0; panel < kMaxSemiInfPanels; ++panel) {
    const EvalResult part = integrate_cx([&](const Abscissa& at) { return f(at.x); }, lo, hi, cfg);
    sum.add(part.value);
    out.abs_err += part.abs_err;
    out.terms += part.terms;
    out.max_term = std::max(out.max_term, std::abs(part.value));
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(sum.value()));
    if (!part.converged) {
      break;
    }
    if (std::abs(f(hi)) < kNegligible && std::abs(part.value) <= tol) {
      out.converged = true;
      break;
    }
    lo = hi;
    hi *= 2.0;
  }
  out.value = sum.value();
  return out;
}

void require_positive(double v, const char* what, const char* who) {
  if (!(v > 0.0)) {
    throw DomainError(fmt::format("{}: {} must be > 0, got {}", who, what, v));
  }
}

void combine(EvalResult& out, const EvalResult& part) {
  out.abs_err += part.abs_err;
  out.terms += part.terms;
  out.converged = out.converged && part.converged;
  out.max_term = std::max(out.max_term, part.max_term);
}

Complex ber_bei_at(double nu, double y) { return kelvin_ber_bei(nu, y).value; }

double part_of(Complex w, KelvinPart f) { return f == KelvinPart::ber ? w.real() : w.imag(); }
double other_part(Complex w, KelvinPart f) { return f == KelvinPart::ber ? w.imag() : w.real(); }
const char* part_name(KelvinPart f) { return f == KelvinPart::ber ? "ber" : "bei"; }

}  // namespace

void QuadConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw ConfigError(
        fmt::format("QuadConfig: tolerances must be > 0, got abs {} rel {}", abs_tol, rel_tol));
  }
  if (max_depth < 1) {
    throw ConfigError(fmt::format("QuadConfig: max_depth must be >= 1, got {}", max_depth));
  }
}

EvalResult integrate_finite_ex(const Integrand& f, double a, double b, const QuadConfig& cfg) {
  return integrate_core<double>(f, a, b, cfg);
}

EvalResult integrate_finite(const std::function<double(double)>& f, double a, double b,
                            const QuadConfig& cfg) {
  return integrate_finite_ex([&](const Abscissa& at) { return f(at.x); }, a, b, cfg);
}

EvalResult integrate_semiinf(const std::function<double(double)>& f, const QuadConfig& cfg) {
  return integrate_semiinf_cx([&](double t) { return Complex{f(t), 0.0}; }, cfg);
}

EvalResult apelblat_ber_bei(double nu, double arg, const QuadConfig& cfg) {
  require_positive(arg, "argument", "apelblat_ber_bei");
  const double x = arg / kSqrt2;
  const double c = cospi(nu);
  const double s = sinpi(nu);

  const EvalResult finite = integrate_cx(
      [&](const Abscissa& at) {
        const double t = at.x;
        const double xs = x * std::sin(t);
        const double phase = xs - nu * t;
        const double ch = std::cosh(xs);
        const double sh = std::sinh(xs);
        const double ber = c * std::cos(phase) * ch - s * std::sin(phase) * sh;
        const double bei = c * std::sin(phase) * sh + s * std::cos(phase) * ch;
        return Complex{ber, bei};
      },
      0.0, kPi, cfg);

  EvalResult out;
  out.value = finite.value / kPi;
  combine(out, finite);
  out.abs_err /= kPi;
  if (s != 0.0) {
    const EvalResult tail = integrate_semiinf_cx(
        [&](double t) {
          const double decay = std::exp(-nu * t - x * std::sinh(t));
          const double phase = x * std::sinh(t) + kPi * nu;
          return decay * Complex{std::cos(phase), std::sin(phase)};
        },
        cfg);
    out.value -= s / kPi * tail.value;
    combine(out, tail);
  }
  return out;
}

std::string_view bracket_name(ApelblatBracket b) {
  switch (b) {
    case ApelblatBracket::printed_intro:
      return "printed_intro";
    case ApelblatBracket::printed_proof:
      return "printed_proof";
    case ApelblatBracket::same_order:
      return "same_order";
    case ApelblatBracket::lowered_order:
      return "lowered_order";
  }
  return "unknown";
}

EvalResult apelblat_dber_dbei(double nu, double x, ApelblatBracket bracket, const QuadConfig& cfg) {
  require_positive(x, "x", "apelblat_dber_dbei");
  if (!(nu >= 0.0)) {
    throw OrderClassError(fmt::format("apelblat_dber_dbei: nu must be >= 0, got {}", nu));
  }

  // Returns A + iB with the bracket read as A +- B.
  auto bracket_at = [&](double y) -> Complex {
    switch (bracket) {
      case ApelblatBracket::printed_intro:
        return {ber_bei_at(nu - 1.0, y).real(), ber_bei_at(nu, y).imag()};
      case ApelblatBracket::printed_proof:
      case ApelblatBracket::lowered_order:
        return ber_bei_at(nu - 1.0, y);
      case ApelblatBracket::same_order:
        return ber_bei_at(nu, y);
    }
    return {};
  };
  // u^{(nu-1)/2} [gamma + log(1-u)] (A + iB)(x sqrt u)
  auto weight = [&](double u, double one_minus_u) -> Complex {
    return std::pow(u, 0.5 * (nu - 1.0)) * (kEulerGamma + std::log(one_minus_u)) *
           bracket_at(x * std::sqrt(u));
  };

  EvalResult integral;
  if (nu > 0.0 && nu < 1.0) {
    // u = s^{1/nu} absorbs the u^{nu-1} behaviour at the origin.
    const double p = 1.0 / nu;
    integral = integrate_cx(
        [&](const Abscissa& at) -> Complex {
          const double s = at.x;
          const double u = std::pow(s, p);
          if (u < 1e-280) {
            return {};
          }
          const double gap = at.from_upper;
          const double one_minus_u = gap < 0.5 ? -std::expm1(p * std::log1p(-gap)) : 1.0 - u;
          return weight(u, one_minus_u) * (p * u / s);
        },
        0.0, 1.0, cfg);
  } else {
    integral = integrate_cx(
        [&](const Abscissa& at) { return weight(at.x, at.from_upper); }, 0.0, 1.0, cfg);
  }

  // At nu = 0 the leading series term of the order nu-1 bracket has weight
  // 1/Gamma(nu) ~ nu against int u^{nu-1}[gamma + log(1-u)] du ~ gamma/nu, a
  // finite nu -> 0+ contribution the integrand at nu = 0 no longer carries.
  if (nu == 0.0 && bracket != ApelblatBracket::same_order) {
    const Complex limit = kEulerGamma * (2.0 / x) * std::polar(1.0, -0.75 * kPi);
    integral.value += bracket == ApelblatBracket::printed_intro ? Complex{limit.real(), 0.0} : limit;
  }

  const double ia = integral.value.real();
  const double ib = integral.value.imag();
  const double plus = ia + ib;
  const double minus = bracket == ApelblatBracket::printed_proof ? plus : ia - ib;

  const EvalResult w = kelvin_ber_bei(nu, x);
  const double ber = w.real();
  const double bei = w.imag();
  const double log_half = std::log(x / 2.0);
  const double scale = x / (2.0 * kSqrt2);

  EvalResult out;
  out.value = {log_half * ber - 0.75 * kPi * bei - scale * plus,
               log_half * bei + 0.75 * kPi * ber + scale * minus};
  combine(out, integral);
  out.abs_err = 2.0 * scale * integral.abs_err + (std::fabs(log_half) + kPi) * w.abs_err;
  return out;
}

EvalResult appendix_ber_bei(double x, TrigVariant variant, const QuadConfig& cfg) {
  if (!(x >= 0.0)) {
    throw DomainError(fmt::format("appendix_ber_bei: x must be >= 0, got {}", x));
  }
  const double scale = x / kSqrt2;
  EvalResult r = integrate_cx(
      [&](const Abscissa& at) {
        const double sc = variant == TrigVariant::sin ? std::sin(at.x) : std::cos(at.x);
        const double y = scale * sc;
        return Complex{std::cosh(y) * std::cos(y), std::sinh(y) * std::sin(y)};
      },
      0.0, kPi / 2.0, cfg);
  r.value *= 2.0 / kPi;
  r.abs_err *= 2.0 / kPi;
  return r;
}

IdentityReport make_report(std::string name, double nu, double x, double lhs, double rhs,
                           double tol) {
  IdentityReport r;
  r.name = std::move(name);
  r.nu = nu;
  r.x = x;
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_diff = std::fabs(lhs - rhs);
  r.tol = tol;
  r.pass = r.abs_diff <= tol;
  return r;
}

std::string to_csv_row(const IdentityReport& r) {
  return fmt::format("{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}", r.name, r.nu, r.x,
                     r.lhs, r.rhs, r.abs_diff, r.tol, r.pass ? "true" : "false");
}

IdentityReport convolution_identity(double a, double b, double t, const QuadConfig& cfg,
                                    double tol) {
  require_positive(b, "b", "convolution_identity");
  require_positive(t, "t", "convolution_identity");
  if (!(a >= b)) {
    throw DomainError(fmt::format("convolution_identity: need a >= b, got a = {}, b = {}", a, b));
  }
  const double lhs = ber_bei_at(0.0, 2.0 * std::sqrt(a * t)).real() +
                     ber_bei_at(0.0, 2.0 * std::sqrt(b * t)).real();
  const EvalResult rhs = integrate_finite_ex(
      [&](const Abscissa& at) {
        const double tau = at.from_lower;
        const double rest = at.from_upper;
        const double p = std::sqrt((a + b) * rest);
        const double q = std::sqrt((a - b) * tau);
        return std::cosh(p) * std::cos(p) * std::cosh(q) * std::cos(q) / std::sqrt(tau * rest);
      },
      0.0, t, cfg);
  return make_report(fmt::format("convolution_a{}_b{}", a, b), 0.0, t, lhs,
                     2.0 / kPi * rhs.real(), tol);
}

IdentityReport theorem5_identity(double nu, double x, KelvinPart f, const QuadConfig& cfg,
                                 double tol) {
  require_positive(x, "x", "theorem5_identity");
  if (!(nu > -1.0)) {
    throw OrderClassError(fmt::format("theorem5_identity: nu must be > -1, got {}", nu));
  }
  const EvalResult lhs = integrate_finite_ex(
      [&](const Abscissa& at) {
        const double u = at.x;
        // log(1 - u^2) = log(1 - u) + log(1 + u)
        const double log_term = std::log(at.from_upper) + std::log1p(u);
        return std::pow(u, nu + 1.0) * log_term * part_of(ber_bei_at(nu, x * u), f);
      },
      0.0, 1.0, cfg);

  const double sign = f == KelvinPart::ber ? 1.0 : -1.0;
  const Complex w1 = ber_bei_at(nu + 1.0, x);
  const double log_half = std::log(x / 2.0);
  const EvalResult dj = dj_dnu_any(nu + 1.0, std::polar(x, -kPi / 4.0));
  const double shift = nu + sign / 4.0;
  const double tail = (Complex{cospi(shift), sinpi(shift)} * dj.value).real();
  const double rhs = ((kPi / 4.0 + log_half + kEulerGamma) * part_of(w1, f) +
                      sign * (kPi / 4.0 - log_half - kEulerGamma) * other_part(w1, f) +
                      kSqrt2 * tail) /
                     (kSqrt2 * x);
  return make_report(fmt::format("theorem5_{}", part_name(f)), nu, x, lhs.real(), rhs, tol);
}

IdentityReport indefinite_integral_check(double nu, double x, KelvinPart f, const QuadConfig& cfg,
                                         double tol) {
  require_positive(x, "x", "indefinite_integral_check");
  if (!(nu >= 0.0)) {
    throw OrderClassError(fmt::format("indefinite_integral_check: nu must be >= 0, got {}", nu));
  }
  const EvalResult lhs = integrate_finite(
      [&](double u) { return std::pow(u, nu + 1.0) * part_of(ber_bei_at(nu, u), f); }, 0.0, x,
      cfg);
  const Complex w1 = ber_bei_at(nu + 1.0, x);
  const double scale = std::pow(x, nu + 1.0) / kSqrt2;
  const double rhs = f == KelvinPart::ber ? scale * (w1.imag() - w1.real())
                                          : -scale * (w1.imag() + w1.real());
  return make_report(fmt::format("indefinite_{}", part_name(f)), nu, x, lhs.real(), rhs, tol);
}

}  // namespace kelvin

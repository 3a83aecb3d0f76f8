#include "kelvin/verify.hpp"

#include <array>
#include <cmath>
#include <functional>

#include <fmt/format.h>
#include <json.hpp>

#include "kelvin/bessel.hpp"
#include "kelvin/hyper.hpp"
#include "kelvin/kelvin.hpp"
#include "kelvin/orderderiv.hpp"
#include "kelvin/scalars.hpp"
#include "kelvin/verify_manifest_data.hpp"

namespace kelvin {

namespace {

using nlohmann::json;
using Reports = std::vector<IdentityReport>;
using Task = std::function<Reports()>;

constexpr std::array<std::string_view, 4> kParts = {"ber", "bei", "ker", "kei"};

struct Context {
  const json& section;
  const VerifyOptions& opts;

  double tol(const char* key) const {
    if (opts.tol_override) {
      return *opts.tol_override;
    }
    return section.at(key).get<double>();
  }
  std::vector<double> grid(const char* key) const { return section.at(key).get<std::vector<double>>(); }
  double number(const char* key) const { return section.at(key).get<double>(); }
};

double scaled(double base, double v) { return base * (1.0 + std::fabs(v)); }

std::array<double, 4> quad_values(double nu, double x, const SeriesConfig& cfg) {
  const KelvinQuad q = kelvin_all(nu, x, cfg);
  return {q.ber, q.bei, q.ker, q.kei};
}

// Richardson central difference of g over the order at steps h and h/2.
std::array<double, 4> richardson(const std::function<std::array<double, 4>(double)>& g, double nu,
                                 double h) {
  const auto central = [&](double step) {
    const auto up = g(nu + step);
    const auto dn = g(nu - step);
    std::array<double, 4> d{};
    for (int i = 0; i < 4; ++i) {
      d[i] = (up[i] - dn[i]) / (2.0 * step);
    }
    return d;
  };
  const auto coarse = central(h);
  const auto fine = central(h / 2.0);
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) {
    out[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
  }
  return out;
}

void add_tasks_fd(const Context& c, std::vector<Task>& tasks) {
  const double h = c.number("h");
  const double base = c.tol("tol");
  const SeriesConfig cfg = c.opts.series;
  for (double nu : c.grid("nu")) {
    for (double x : c.grid("x")) {
      tasks.push_back([=] {
        Reports out;
        const OrderDerivQuad d = dkelvin(nu, x, cfg);
        const std::array<double, 4> got = {d.dber, d.dbei, d.dker, d.dkei};
        const auto fd = richardson([&](double n) { return quad_values(n, x, cfg); }, nu, h);
        for (int i = 0; i < 4; ++i) {
          out.push_back(make_report(fmt::format("fd_d{}", kParts[i]), nu, x, got[i], fd[i],
                                    scaled(base, fd[i])));
        }

        // Reflected map m -> f_{-m}, against the negative-order forms.
        const EvalResult bb = dkelvin_bb_neg(nu, x, cfg);
        const EvalResult kk = dkelvin_kk_neg(nu, x, cfg);
        const std::array<double, 4> neg = {bb.real(), bb.imag(), kk.real(), kk.imag()};
        const auto fdn = richardson([&](double m) { return quad_values(-m, x, cfg); }, nu, h);
        for (int i = 0; i < 4; ++i) {
          out.push_back(make_report(fmt::format("fd_neg_d{}", kParts[i]), -nu, x, neg[i], fdn[i],
                                    scaled(base, fdn[i])));
        }
        return out;
      });
    }
  }
}

// ber_{-n} + i bei_{-n} straight from the ascending series at order -n,
// without any reflection formula.
Complex ber_bei_negative_series(long n, double x) {
  const Complex half = std::polar(x / 2.0, -kPi / 4.0);
  Complex sum{};
  for (long k = 0; k < 200; ++k) {
    const double w = rgamma_real(static_cast<double>(k - n) + 1.0) * rgamma_real(k + 1.0);
    if (w == 0.0) {
      continue;
    }
    const Complex term = (k % 2 == 0 ? 1.0 : -1.0) * w * std::pow(half, static_cast<int>(2 * k - n));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) {
      break;
    }
  }
  return (n % 2 == 0 ? 1.0 : -1.0) * sum;
}

void add_tasks_reflection(const Context& c, std::vector<Task>& tasks) {
  const double base = c.tol("tol");
  const SeriesConfig cfg = c.opts.series;
  for (double nd : c.grid("n")) {
    const long n = std::lround(nd);
    for (double x : c.grid("x")) {
      tasks.push_back([=] {
        Reports out;
        const double sign = n % 2 == 0 ? 1.0 : -1.0;
        const Complex direct = ber_bei_negative_series(n, x);
        const KelvinQuad neg = kelvin_all(-static_cast<double>(n), x, cfg);
        const KelvinQuad pos = kelvin_all(static_cast<double>(n), x, cfg);
        const std::array<double, 4> lhs = {direct.real(), direct.imag(), neg.ker, neg.kei};
        const std::array<double, 4> lib = {neg.ber, neg.bei, neg.ker, neg.kei};
        const std::array<double, 4> rhs = {sign * pos.ber, sign * pos.bei, sign * pos.ker,
                                           sign * pos.kei};
        for (int i = 0; i < 4; ++i) {
          const double tol = base * std::fabs(rhs[i]);
          out.push_back(make_report(fmt::format("reflect_{}", kParts[i]), -static_cast<double>(n), x,
                                    lhs[i], rhs[i], tol));
          if (i < 2) {
            out.push_back(make_report(fmt::format("reflect_{}_reflected", kParts[i]),
                                      -static_cast<double>(n), x, lib[i], rhs[i], tol));
          }
        }
        return out;
      });
    }
  }

  const double conj_base = c.opts.tol_override.value_or(c.number("conj_tol"));
  for (double nu : c.grid("conj_nu")) {
    for (double x : c.grid("conj_x")) {
      tasks.push_back([=] {
        Reports out;
        const auto check = [&](std::string_view kernel, Complex at_z, Complex at_conj) {
          out.push_back(make_report(fmt::format("conj_{}_re", kernel), nu, x, at_conj.real(),
                                    at_z.real(), scaled(conj_base, at_z.real())));
          out.push_back(make_report(fmt::format("conj_{}_im", kernel), nu, x, at_conj.imag(),
                                    -at_z.imag(), scaled(conj_base, at_z.imag())));
        };
        const Complex zm = std::polar(x, -kPi / 4.0);
        const Complex zp = std::polar(x, kPi / 4.0);

        HyperSpec spec{{nu + 0.5}, {nu + 1.0, 1.5, nu + 2.0}, -zm * zm / 4.0};
        HyperSpec spec_conj = spec;
        spec_conj.z = std::conj(spec.z);
        check("pfq", pfq(spec, cfg).value, pfq(spec_conj, cfg).value);
        check("J", bessel_j(nu, zm, cfg).value, bessel_j(nu, std::conj(zm), cfg).value);
        check("I", bessel_i(nu, zp, cfg).value, bessel_i(nu, std::conj(zp), cfg).value);
        check("K", bessel_k(nu, zp, cfg).value, bessel_k(nu, std::conj(zp), cfg).value);
        check("dJ", dj_dnu_any(nu, zm, cfg).value, dj_dnu_any(nu, std::conj(zm), cfg).value);
        check("dK", dk_dnu_any(nu, zp, cfg).value, dk_dnu_any(nu, std::conj(zp), cfg).value);
        return out;
      });
    }
  }
}

// Scaled residual of x^2 w'' + x w' - (nu^2 + i x^2) w with 5-point
// differences; lhs is |residual|, tol is base (|w| + |x w'| + |x^2 w''|).
IdentityReport ode_report(std::string name, double nu, double x, double h, double base,
                          const std::function<Complex(double)>& w) {
  const Complex m2 = w(x - 2.0 * h);
  const Complex m1 = w(x - h);
  const Complex c0 = w(x);
  const Complex p1 = w(x + h);
  const Complex p2 = w(x + 2.0 * h);
  const Complex d1 = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
  const Complex d2 = (-p2 + 16.0 * p1 - 30.0 * c0 + 16.0 * m1 - m2) / (12.0 * h * h);
  const Complex residual = x * x * d2 + x * d1 - Complex{nu * nu, x * x} * c0;
  const double scale = std::abs(c0) + std::abs(x * d1) + std::abs(x * x * d2);
  return make_report(std::move(name), nu, x, std::abs(residual), 0.0, base * scale);
}

void add_tasks_ode(const Context& c, std::vector<Task>& tasks) {
  const double h = c.number("h");
  const double base = c.tol("tol");
  const SeriesConfig cfg = c.opts.series;
  for (double nu : c.grid("nu")) {
    for (double x : c.grid("x")) {
      tasks.push_back([=] {
        return Reports{ode_report("ode_ber_bei", nu, x, h, base,
                                  [&](double y) { return kelvin_ber_bei(nu, y, cfg).value; })};
      });
      tasks.push_back([=] {
        return Reports{ode_report("ode_ker_kei", nu, x, h, base,
                                  [&](double y) { return kelvin_ker_kei(nu, y, cfg).value; })};
      });
    }
  }
}

void add_tasks_apelblat(const Context& c, std::vector<Task>& tasks) {
  const double tol = c.tol("tol");
  const double dtol = c.opts.tol_override.value_or(c.number("deriv_tol"));
  const SeriesConfig cfg = c.opts.series;
  const QuadConfig qcfg = c.opts.quad;
  for (double nu : c.grid("nu")) {
    for (double arg : c.grid("arg")) {
      tasks.push_back([=] {
        const EvalResult q = apelblat_ber_bei(nu, arg, qcfg);
        const EvalResult s = kelvin_ber_bei(nu, arg, cfg);
        return Reports{
            make_report("apelblat_ber", nu, arg, q.real(), s.real(), tol),
            make_report("apelblat_bei", nu, arg, q.imag(), s.imag(), tol),
        };
      });
    }
  }
  for (double nu : c.grid("deriv_nu")) {
    for (double x : c.grid("deriv_x")) {
      tasks.push_back([=] {
        const EvalResult q = apelblat_dber_dbei(nu, x, ApelblatBracket::lowered_order, qcfg);
        const OrderDerivQuad d = dkelvin(nu, x, cfg);
        return Reports{
            make_report("apelblat_dber", nu, x, q.real(), d.dber, dtol),
            make_report("apelblat_dbei", nu, x, q.imag(), d.dbei, dtol),
        };
      });
    }
  }
}

void add_tasks_theorem5(const Context& c, std::vector<Task>& tasks) {
  const double tol = c.tol("tol");
  const double itol = c.opts.tol_override.value_or(c.number("indefinite_tol"));
  const QuadConfig qcfg = c.opts.quad;
  for (double nu : c.grid("nu")) {
    for (double x : c.grid("x")) {
      tasks.push_back([=] {
        Reports out = {theorem5_identity(nu, x, KelvinPart::ber, qcfg, tol),
                       theorem5_identity(nu, x, KelvinPart::bei, qcfg, tol)};
        out[0].name = "theorem5_ber";
        out[1].name = "theorem5_bei";
        return out;
      });
    }
  }
  for (double nu : c.grid("indefinite_nu")) {
    for (double x : c.grid("indefinite_x")) {
      tasks.push_back([=] {
        Reports out = {indefinite_integral_check(nu, x, KelvinPart::ber, qcfg, itol),
                       indefinite_integral_check(nu, x, KelvinPart::bei, qcfg, itol)};
        out[0].name = "indefinite_ber";
        out[1].name = "indefinite_bei";
        return out;
      });
    }
  }
}

void add_tasks_appendix(const Context& c, std::vector<Task>& tasks) {
  const double vtol = c.tol("variant_tol");
  const double stol = c.opts.tol_override.value_or(c.number("series_tol"));
  const double ctol = c.opts.tol_override.value_or(c.number("convolution_tol"));
  const SeriesConfig cfg = c.opts.series;
  const QuadConfig qcfg = c.opts.quad;
  for (double x : c.grid("x")) {
    tasks.push_back([=] {
      const EvalResult vs = appendix_ber_bei(x, TrigVariant::sin, qcfg);
      const EvalResult vc = appendix_ber_bei(x, TrigVariant::cos, qcfg);
      const EvalResult s = kelvin_ber_bei(0.0, x, cfg);
      return Reports{
          make_report("appendix_ber_sin_vs_cos", 0.0, x, vs.real(), vc.real(), vtol),
          make_report("appendix_bei_sin_vs_cos", 0.0, x, vs.imag(), vc.imag(), vtol),
          make_report("appendix_ber_sin", 0.0, x, vs.real(), s.real(), stol),
          make_report("appendix_bei_sin", 0.0, x, vs.imag(), s.imag(), stol),
          make_report("appendix_ber_cos", 0.0, x, vc.real(), s.real(), stol),
          make_report("appendix_bei_cos", 0.0, x, vc.imag(), s.imag(), stol),
      };
    });
  }
  for (const auto& abt : c.section.at("convolution")) {
    const auto v = abt.get<std::vector<double>>();
    if (v.size() != 3) {
      throw ConfigError("manifest: convolution entries must be [a, b, t]");
    }
    tasks.push_back([=] { return Reports{convolution_identity(v[0], v[1], v[2], qcfg, ctol)}; });
  }
}

void add_tasks_brychkov(const Context& c, std::vector<Task>& tasks) {
  const double tol = c.tol("tol");
  const SeriesConfig cfg = c.opts.series;
  for (double nu : c.grid("nu")) {
    for (double x : c.grid("x")) {
      tasks.push_back([=] {
        const EvalResult ref = dkelvin_bb_brychkov(nu, x, cfg);
        const EvalResult cf = dkelvin_bb_pos(nu, x, cfg);
        return Reports{
            make_report("brychkov_dber", nu, x, cf.real(), ref.real(), tol),
            make_report("brychkov_dbei", nu, x, cf.imag(), ref.imag(), tol),
        };
      });
    }
  }
}

void add_tasks_integer(const Context& c, std::vector<Task>& tasks) {
  const double base = c.tol("tol");
  const SeriesConfig cfg = c.opts.series;
  for (double nd : c.grid("n")) {
    const long n = std::lround(nd);
    for (double x : c.grid("x")) {
      tasks.push_back([=] {
        const OrderDerivQuad s = dkelvin_integer(n, x, cfg);
        const OrderDerivQuad e = dkelvin_extrapolated(static_cast<double>(n), x, cfg);
        const std::array<double, 4> lhs = {s.dber, s.dbei, s.dker, s.dkei};
        const std::array<double, 4> rhs = {e.dber, e.dbei, e.dker, e.dkei};
        Reports out;
        for (int i = 0; i < 4; ++i) {
          out.push_back(make_report(fmt::format("integer_d{}", kParts[i]), static_cast<double>(n),
                                    x, lhs[i], rhs[i], scaled(base, rhs[i])));
        }
        return out;
      });
    }
  }
}

using Builder = void (*)(const Context&, std::vector<Task>&);

Builder builder_for(std::string_view suite) {
  if (suite == "fd") return add_tasks_fd;
  if (suite == "reflection") return add_tasks_reflection;
  if (suite == "ode") return add_tasks_ode;
  if (suite == "apelblat") return add_tasks_apelblat;
  if (suite == "theorem5") return add_tasks_theorem5;
  if (suite == "appendix") return add_tasks_appendix;
  if (suite == "brychkov") return add_tasks_brychkov;
  if (suite == "integer") return add_tasks_integer;
  return nullptr;
}

}  // namespace

std::string_view embedded_manifest() { return detail::kVerifyManifest; }

std::vector<IdentityReport> run_suite(std::string_view suite, const VerifyOptions& opts) {
  return run_suite(suite, embedded_manifest(), opts);
}

std::vector<IdentityReport> run_suite(std::string_view suite, std::string_view manifest,
                                      const VerifyOptions& opts) {
  opts.series.validate();
  opts.quad.validate();
  if (opts.tol_override && !(*opts.tol_override > 0.0)) {
    throw ConfigError(fmt::format("tolerance must be > 0, got {}", *opts.tol_override));
  }

  std::vector<std::string_view> names;
  if (suite == "all") {
    names.assign(std::begin(kSuiteNames), std::end(kSuiteNames));
  } else if (builder_for(suite) != nullptr) {
    names.push_back(suite);
  } else {
    throw ConfigError(fmt::format("unknown suite '{}'", suite));
  }

  std::vector<Task> tasks;
  try {
    const json doc = json::parse(manifest);
    for (std::string_view name : names) {
      const Context ctx{doc.at(std::string(name)), opts};
      builder_for(name)(ctx, tasks);
    }
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("manifest: {}", e.what()));
  }

  const auto chunks = sweep<Reports>(tasks, [](const Task& t) { return t(); }, opts.mode);
  Reports out;
  for (const auto& chunk : chunks) {
    out.insert(out.end(), chunk.begin(), chunk.end());
  }
  return out;
}

std::vector<IdentityReport> bracket_survey(double nu, double x, double tol,
                                           const VerifyOptions& opts) {
  const OrderDerivQuad d = dkelvin(nu, x, opts.series);
  Reports out;
  for (ApelblatBracket b : {ApelblatBracket::printed_intro, ApelblatBracket::printed_proof,
                            ApelblatBracket::same_order, ApelblatBracket::lowered_order}) {
    const EvalResult q = apelblat_dber_dbei(nu, x, b, opts.quad);
    out.push_back(make_report(fmt::format("bracket_{}_dber", bracket_name(b)), nu, x, q.real(),
                              d.dber, tol));
    out.push_back(make_report(fmt::format("bracket_{}_dbei", bracket_name(b)), nu, x, q.imag(),
                              d.dbei, tol));
  }
  return out;
}

bool all_pass(const std::vector<IdentityReport>& reports) {
  for (const auto& r : reports) {
    if (!r.pass) {
      return false;
    }
  }
  return true;
}

}  // namespace kelvin

#include "kelvin/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "kelvin/kelvin.hpp"
#include "kelvin/orderderiv.hpp"
#include "kelvin/quad.hpp"
#include "kelvin/sweep.hpp"
#include "kelvin/verify.hpp"

namespace kelvin {

namespace {

const std::vector<std::string> kFunctions = {"ber", "bei", "ker", "kei", "dber", "dbei", "dker", "dkei"};

struct Options {
  std::string fn;
  std::optional<double> nu;
  std::optional<double> x;
  std::string nu_range;
  std::string x_range;
  std::optional<double> tol;
  std::string format = "csv";
  std::string out_path;
  std::string suite = "all";
  int repeats = 5;
  bool serial = false;
};

// Negative zero prints as 0 so identical tables compare equal as text.
std::string num(double v) { return fmt::format("{:.16e}", v == 0.0 ? 0.0 : v); }

double parse_double(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(fmt::format("{}: cannot parse '{}' as a number", what, text));
  }
  return v;
}

// "a:b:step" or a single value "a".
std::vector<double> parse_range(const std::string& text, std::string_view what) {
  std::vector<std::string_view> parts;
  std::string_view rest = text;
  for (;;) {
    const auto pos = rest.find(':');
    parts.push_back(rest.substr(0, pos));
    if (pos == std::string_view::npos) {
      break;
    }
    rest.remove_prefix(pos + 1);
  }
  if (parts.size() == 1) {
    return {parse_double(parts[0], what)};
  }
  if (parts.size() != 3) {
    throw ConfigError(fmt::format("{}: expected a:b:step, got '{}'", what, text));
  }
  return make_range(parse_double(parts[0], what), parse_double(parts[1], what),
                    parse_double(parts[2], what));
}

std::vector<double> axis(const std::optional<double>& single, const std::string& range,
                         std::string_view name) {
  if (single && !range.empty()) {
    throw ConfigError(fmt::format("give either --{} or --{}-range, not both", name, name));
  }
  if (single) {
    return {*single};
  }
  if (range.empty()) {
    throw ConfigError(fmt::format("missing --{} or --{}-range", name, name));
  }
  return parse_range(range, fmt::format("--{}-range", name));
}

SeriesConfig series_from_env() {
  SeriesConfig cfg;
  if (const char* env = std::getenv("KELVIN_MAX_TERMS")) {
    const std::string_view text = env;
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || v < 1) {
      throw ConfigError(fmt::format("KELVIN_MAX_TERMS must be a positive integer, got '{}'", text));
    }
    cfg.max_terms = v;
  }
  return cfg;
}

int cmd_eval(const Options& o, std::ostream& out) {
  if (o.fn.empty()) {
    throw ConfigError("eval: missing function (ber, bei, ker, kei, dber, dbei, dker, dkei)");
  }
  if (!o.nu || !o.x) {
    throw ConfigError("eval: --nu and --x are required");
  }
  const SeriesConfig cfg = series_from_env();
  const double nu = *o.nu;
  const double x = *o.x;

  double value = 0.0;
  double err = 0.0;
  std::string method = "series";
  if (o.fn == "ber" || o.fn == "bei") {
    const EvalResult r = kelvin_ber_bei(nu, x, cfg);
    value = o.fn == "ber" ? r.real() : r.imag();
    err = r.abs_err;
  } else if (o.fn == "ker" || o.fn == "kei") {
    const EvalResult r = kelvin_ker_kei(nu, x, cfg);
    value = o.fn == "ker" ? r.real() : r.imag();
    err = r.abs_err;
  } else {
    const OrderDerivQuad d = dkelvin(nu, x, cfg);
    value = o.fn == "dber" ? d.dber : o.fn == "dbei" ? d.dbei : o.fn == "dker" ? d.dker : d.dkei;
    err = d.err_estimate;
    const bool bb = o.fn == "dber" || o.fn == "dbei";
    method = std::string(method_name(bb ? d.method_bb : d.method_kk));
  }
  if (outside_envelope(nu, x)) {
    method += ";degraded";
  }

  if (o.format == "csv") {
    out << "fn,nu,x,value,err,method\n";
    out << fmt::format("{},{},{},{},{},{}\n", o.fn, num(nu), num(x), num(value), num(err), method);
  } else {
    out << fmt::format("{}(nu={}, x={}) = {:.17g}\n", o.fn, nu, x, value);
    out << fmt::format("err    {:.3e}\n", err);
    out << fmt::format("method {}\n", method);
  }
  return kExitOk;
}

int cmd_table(const Options& o, std::ostream& out) {
  const std::vector<double> nus = axis(o.nu, o.nu_range, "nu");
  const std::vector<double> xs = axis(o.x, o.x_range, "x");
  for (double x : xs) {
    if (!(x >= 0.0)) {
      throw DomainError(fmt::format("table: x must be >= 0, got {}", x));
    }
  }
  const SeriesConfig cfg = series_from_env();
  const auto rows =
      evaluate_grid(nus, xs, cfg, o.serial ? ExecMode::serial : ExecMode::parallel);

  const char sep = o.format == "csv" ? ',' : ' ';
  const auto cell = [&](bool present, double v) {
    if (present) {
      return num(v);
    }
    return std::string(o.format == "csv" ? "" : "-");
  };
  out << fmt::format("nu{0}x{0}ber{0}bei{0}ker{0}kei{0}dber{0}dbei{0}dker{0}dkei{0}method\n", sep);
  for (const TableRow& r : rows) {
    out << fmt::format("{1}{0}{2}{0}{3}{0}{4}{0}{5}{0}{6}{0}{7}{0}{8}{0}{9}{0}{10}{0}{11}\n", sep,
                       num(r.nu), num(r.x), cell(r.has_bb, r.ber), cell(r.has_bb, r.bei),
                       cell(r.has_kk, r.ker), cell(r.has_kk, r.kei), cell(r.has_kk, r.dber),
                       cell(r.has_kk, r.dbei), cell(r.has_kk, r.dker), cell(r.has_kk, r.dkei),
                       r.method);
  }
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  VerifyOptions vo;
  vo.tol_override = o.tol;
  vo.series = series_from_env();
  vo.mode = o.serial ? ExecMode::serial : ExecMode::parallel;
  const auto reports = run_suite(o.suite, vo);

  std::size_t passed = 0;
  if (o.format == "csv") {
    out << kIdentityCsvHeader << '\n';
  }
  for (const auto& r : reports) {
    passed += r.pass ? 1 : 0;
    if (o.format == "csv") {
      out << to_csv_row(r) << '\n';
    } else {
      out << fmt::format("{} {:<28} nu={:<6g} x={:<6g} diff={:.3e} tol={:.3e}\n",
                         r.pass ? "PASS" : "FAIL", r.name, r.nu, r.x, r.abs_diff, r.tol);
    }
  }
  err << fmt::format("verify {}: {}/{} checks passed\n", o.suite, passed, reports.size());
  return passed == reports.size() ? kExitOk : kExitVerifyFailed;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

template <class F>
double median_ns(int repeats, F&& f) {
  std::vector<double> samples;
  for (int i = 0; i < repeats; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    samples.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count());
  }
  return median(samples);
}

int cmd_bench(const Options& o, std::ostream& out) {
  if (o.repeats < 1) {
    throw ConfigError(fmt::format("bench: --repeats must be >= 1, got {}", o.repeats));
  }
  const std::vector<double> nus =
      o.nu || !o.nu_range.empty() ? axis(o.nu, o.nu_range, "nu") : parse_range("0.25:2.75:0.5", "");
  const std::vector<double> xs =
      o.x || !o.x_range.empty() ? axis(o.x, o.x_range, "x") : parse_range("0.5:4.5:1", "");
  for (double nu : nus) {
    if (!(nu >= 0.0)) {
      throw DomainError(fmt::format("bench: the quadrature path needs nu >= 0, got {}", nu));
    }
  }
  for (double x : xs) {
    if (!(x > 0.0)) {
      throw DomainError(fmt::format("bench: x must be > 0, got {}", x));
    }
  }
  const SeriesConfig cfg = series_from_env();

  const char sep = o.format == "csv" ? ',' : ' ';
  out << fmt::format("nu{0}x{0}closed_form_ns{0}quadrature_ns{0}ratio\n", sep);
  std::vector<double> closed_all;
  std::vector<double> quad_all;
  volatile double sink = 0.0;
  for (double nu : nus) {
    for (double x : xs) {
      const double tc = median_ns(o.repeats, [&] { sink = sink + dkelvin(nu, x, cfg).dber; });
      const double tq =
          median_ns(o.repeats, [&] { sink = sink + apelblat_dber_dbei(nu, x).real(); });
      closed_all.push_back(tc);
      quad_all.push_back(tq);
      out << fmt::format("{1:.6g}{0}{2:.6g}{0}{3:.0f}{0}{4:.0f}{0}{5:.2f}\n", sep, nu, x, tc, tq,
                         tq / tc);
    }
  }
  const double mc = median(closed_all);
  const double mq = median(quad_all);
  out << fmt::format("median{0}{0}{1:.0f}{0}{2:.0f}{0}{3:.2f}\n", sep, mc, mq, mq / mc);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Kelvin functions and their order derivatives", "kelvin"};
  app.require_subcommand(1);

  const auto add_point = [&](CLI::App* sub) {
    sub->add_option("--nu", o.nu, "Order");
    sub->add_option("--x", o.x, "Argument");
  };
  const auto add_ranges = [&](CLI::App* sub) {
    sub->add_option("--nu-range", o.nu_range, "Order grid a:b:step");
    sub->add_option("--x-range", o.x_range, "Argument grid a:b:step");
  };
  const auto add_io = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "plain"}));
    sub->add_option("--out", o.out_path, "Write output to PATH");
  };

  CLI::App* eval = app.add_subcommand("eval", "Evaluate one function at one point");
  eval->add_option("--fn,fn", o.fn, "Function")->check(CLI::IsMember(kFunctions));
  add_point(eval);
  add_io(eval);
  o.format = "plain";

  CLI::App* table = app.add_subcommand("table", "All functions and derivatives on a grid");
  add_point(table);
  add_ranges(table);
  add_io(table);
  table->add_flag("--serial", o.serial, "Disable the parallel sweep");

  CLI::App* verify = app.add_subcommand("verify", "Run identity and invariant suites");
  std::vector<std::string> suites = {"all"};
  for (auto s : kSuiteNames) {
    suites.emplace_back(s);
  }
  verify->add_option("--suite", o.suite, "Suite name")->check(CLI::IsMember(suites));
  verify->add_option("--tol", o.tol, "Replace every base tolerance");
  add_io(verify);
  verify->add_flag("--serial", o.serial, "Disable the parallel sweep");

  CLI::App* bench = app.add_subcommand("bench", "Closed-form vs quadrature latency");
  add_point(bench);
  add_ranges(bench);
  add_io(bench);
  bench->add_option("--repeats", o.repeats, "Timing repeats per point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  // Subcommands other than eval default to CSV unless --format was given.
  CLI::App* active = app.get_subcommands().front();
  if (active != eval && active->count("--format") == 0) {
    o.format = "csv";
  }

  try {
    if (o.tol && !(*o.tol > 0.0)) {
      throw ConfigError(fmt::format("--tol must be > 0, got {}", *o.tol));
    }
    std::ofstream file;
    if (!o.out_path.empty()) {
      file.open(o.out_path, std::ios::binary | std::ios::trunc);
      if (!file) {
        throw ConfigError(fmt::format("cannot open --out path '{}'", o.out_path));
      }
    }
    std::ostream& sink = o.out_path.empty() ? out : file;

    int code = kExitOk;
    if (active == eval) {
      code = cmd_eval(o, sink);
    } else if (active == table) {
      code = cmd_table(o, sink);
    } else if (active == verify) {
      code = cmd_verify(o, sink, err);
    } else {
      code = cmd_bench(o, sink);
    }
    sink.flush();
    if (!sink) {
      throw ConfigError("failed writing output");
    }
    return code;
  } catch (const Error& e) {
    err << e.kind() << ": " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace kelvin

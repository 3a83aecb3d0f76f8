#include "kelvin/sweep.hpp"

#include <cmath>

#include <fmt/format.h>

#include "kelvin/kelvin.hpp"
#include "kelvin/orderderiv.hpp"

namespace kelvin {

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body, ExecMode mode) {
  std::vector<std::exception_ptr> errors(n);
  const auto guarded = [&](std::size_t i) {
    try {
      body(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  if (mode == ExecMode::parallel) {
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < count; ++i) {
      guarded(static_cast<std::size_t>(i));
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      guarded(i);
    }
  }

  for (const auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

std::vector<double> make_range(double a, double b, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw ConfigError(fmt::format("range step must be > 0, got {}", step));
  }
  if (!std::isfinite(a) || !std::isfinite(b) || b < a) {
    throw ConfigError(fmt::format("empty range {}:{}", a, b));
  }
  std::vector<double> out;
  const double slack = step * 1e-9;
  for (long k = 0;; ++k) {
    const double v = a + static_cast<double>(k) * step;
    if (v > b + slack) {
      break;
    }
    out.push_back(v);
  }
  return out;
}

TableRow evaluate_row(double nu, double x, const SeriesConfig& cfg) {
  TableRow row;
  row.nu = nu;
  row.x = x;
  if (x == 0.0) {
    row.has_kk = false;
    row.method = "x0:ker_kei_undefined";
    try {
      const EvalResult w = kelvin_ber_bei(nu, x, cfg);
      row.ber = w.real();
      row.bei = w.imag();
    } catch (const DomainError&) {
      // Negative non-integer order: ber/bei need ker/kei as well.
      row.has_bb = false;
      row.method = "x0:undefined";
    }
    return row;
  }

  const KelvinQuad q = kelvin_all(nu, x, cfg);
  const OrderDerivQuad d = dkelvin(nu, x, cfg);
  row.ber = q.ber;
  row.bei = q.bei;
  row.ker = q.ker;
  row.kei = q.kei;
  row.dber = d.dber;
  row.dbei = d.dbei;
  row.dker = d.dker;
  row.dkei = d.dkei;
  row.method = d.method();
  if (q.degraded) {
    row.method += ";degraded";
  }
  return row;
}

std::vector<TableRow> evaluate_grid(const std::vector<double>& nus, const std::vector<double>& xs,
                                    const SeriesConfig& cfg, ExecMode mode) {
  std::vector<TableRow> rows(nus.size() * xs.size());
  for_each_index(
      rows.size(),
      [&](std::size_t i) { rows[i] = evaluate_row(nus[i / xs.size()], xs[i % xs.size()], cfg); },
      mode);
  return rows;
}

}  // namespace kelvin

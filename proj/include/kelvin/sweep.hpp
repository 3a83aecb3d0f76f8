#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "kelvin/types.hpp"

namespace kelvin {

enum class ExecMode { serial, parallel };

/// Runs body(i) for i in [0, n). The parallel mode uses OpenMP when built
/// with it and falls back to the serial loop otherwise. An exception thrown
/// by any index is rethrown after the loop (lowest index first).
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body, ExecMode mode);

/// Maps f over items; results keep input order in either mode.
template <class R, class T, class F>
std::vector<R> sweep(const std::vector<T>& items, F f, ExecMode mode) {
  std::vector<R> out(items.size());
  for_each_index(
      items.size(), [&](std::size_t i) { out[i] = f(items[i]); }, mode);
  return out;
}

/// Arithmetic grid a, a+step, ... up to b (inclusive within step/1e9).
std::vector<double> make_range(double a, double b, double step);

/// One line of the Kelvin table. has_kk is false at x = 0, where ker/kei
/// and all order derivatives are undefined; `method` then carries a note.
struct TableRow {
  double nu = 0.0;
  double x = 0.0;
  bool has_bb = true;
  bool has_kk = true;
  double ber = 0.0;
  double bei = 0.0;
  double ker = 0.0;
  double kei = 0.0;
  double dber = 0.0;
  double dbei = 0.0;
  double dker = 0.0;
  double dkei = 0.0;
  std::string method;
};

TableRow evaluate_row(double nu, double x, const SeriesConfig& cfg = {});

/// Rows in nu-major order.
std::vector<TableRow> evaluate_grid(const std::vector<double>& nus, const std::vector<double>& xs,
                                    const SeriesConfig& cfg, ExecMode mode);

}  // namespace kelvin

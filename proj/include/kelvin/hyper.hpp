#pragma once

#include <vector>

#include "kelvin/types.hpp"

namespace kelvin {

/// Parameters of pFq(upper; lower; z). Only entire series (p <= q) are
/// supported.
struct HyperSpec {
  std::vector<double> upper;
  std::vector<double> lower;
  Complex z;
};

/// Generalized hypergeometric series summed with the term-ratio recursion
/// t_{k+1} = t_k * prod(a_i + k) / prod(b_j + k) * z / (k + 1)
/// and compensated accumulation.
///
/// Stops once two consecutive terms satisfy 10|t| <= rel_tol |S| while the
/// term ratio is contracting; `abs_err` is 10 times the first neglected term.
/// Hitting `max_terms` returns the partial sum with `converged == false`.
///
/// Exactly matched upper/lower pairs are removed before summing.
///
/// Throws DenominatorPoleError when a lower parameter is a nonpositive
/// integer and ConfigError when p > q.
EvalResult pfq(const HyperSpec& spec, const SeriesConfig& cfg = {});

}  // namespace kelvin

#include "kelvin/hyper.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "extended.hpp"
#include "kelvin/summation.hpp"

namespace kelvin {

void SeriesConfig::validate() const {
  if (!(rel_tol > 0.0)) {
    throw ConfigError(fmt::format("SeriesConfig: rel_tol must be > 0, got {}", rel_tol));
  }
  if (max_terms < 1) {
    throw ConfigError(fmt::format("SeriesConfig: max_terms must be >= 1, got {}", max_terms));
  }
}

namespace {

template <class T>
struct SeriesSum {
  std::complex<T> value{};
  T abs_err = 0;
  T max_term = 0;
  int terms = 0;
  bool converged = false;
};

template <class T>
SeriesSum<T> sum_series(const std::vector<T>& upper_in, const std::vector<T>& lower_in,
                        std::complex<T> z, T rel_tol, int max_terms) {
  if (upper_in.size() > lower_in.size()) {
    throw ConfigError(fmt::format("pfq: {}F{} is not entire (p > q)", upper_in.size(),
                                  lower_in.size()));
  }
  for (T b : lower_in) {
    if (b <= 0 && std::floor(b) == b) {
      throw DenominatorPoleError(fmt::format("pfq: lower parameter {} is a nonpositive integer",
                                             static_cast<double>(b)));
    }
  }

  // Exactly matched upper/lower pairs cancel term by term; drop them so the
  // reduced series is summed with the same roundings.
  std::vector<T> upper;
  std::vector<T> lower = lower_in;
  for (T a : upper_in) {
    const auto it = std::find(lower.begin(), lower.end(), a);
    if (it != lower.end()) {
      lower.erase(it);
    } else {
      upper.push_back(a);
    }
  }

  SeriesSum<T> out;
  BasicCompensatedComplexSum<T> sum;
  std::complex<T> term{1, 0};
  bool previous_small = false;
  const T abs_z = std::abs(z);

  for (int k = 0; k < max_terms; ++k) {
    sum.add(term);
    const T term_mag = std::abs(term);
    out.max_term = std::max(out.max_term, term_mag);

    T ratio = T(1) / (k + T(1));
    for (T a : upper) ratio *= a + k;
    for (T b : lower) ratio /= b + k;
    const std::complex<T> next = term * ratio * z;

    const T partial = std::abs(sum.value());
    const bool small = 10 * term_mag <= rel_tol * partial;
    const bool contracting = std::abs(ratio) * abs_z < 1;
    out.terms = k + 1;
    if (small && previous_small && contracting) {
      out.value = sum.value();
      out.abs_err = 10 * std::abs(next);
      out.converged = true;
      return out;
    }
    previous_small = small;
    term = next;
  }

  out.value = sum.value();
  out.abs_err = 10 * std::abs(term);
  out.converged = false;
  return out;
}

}  // namespace

EvalResult pfq(const HyperSpec& spec, const SeriesConfig& cfg) {
  cfg.validate();
  const SeriesSum<double> s = sum_series(spec.upper, spec.lower, spec.z, cfg.rel_tol, cfg.max_terms);
  EvalResult out;
  out.value = s.value;
  out.abs_err = s.abs_err;
  out.max_term = s.max_term;
  out.terms = s.terms;
  out.converged = s.converged;
  return out;
}

namespace detail {

ResultLd pfq_ld(const std::vector<ld>& upper, const std::vector<ld>& lower, Cld z,
                const SeriesConfig& cfg) {
  cfg.validate();
  const ld rel_tol = static_cast<ld>(cfg.rel_tol) * (LDBL_EPSILON / DBL_EPSILON);
  const SeriesSum<ld> s = sum_series(upper, lower, z, rel_tol, cfg.max_terms);
  ResultLd out;
  out.value = s.value;
  out.abs_err = s.abs_err;
  out.max_term = s.max_term;
  out.terms = s.terms;
  out.converged = s.converged;
  return out;
}

}  // namespace detail

}  // namespace kelvin

#pragma once

#include <string>
#include <string_view>

#include "kelvin/types.hpp"

namespace kelvin {

enum class DerivMethod { closed_form, integer_sum, extrapolated, reference_brychkov };

std::string_view method_name(DerivMethod m);

/// Order derivatives of the four Kelvin functions at one (nu, x).
///
/// The ber/bei pair and the ker/kei pair have different excluded orders
/// (integers vs half-integers), so each pair carries its own method tag.
struct OrderDerivQuad {
  double dber = 0.0;
  double dbei = 0.0;
  double dker = 0.0;
  double dkei = 0.0;
  double nu = 0.0;
  double x = 0.0;
  DerivMethod method_bb = DerivMethod::closed_form;
  DerivMethod method_kk = DerivMethod::closed_form;
  double err_estimate = 0.0;

  /// One tag when both pairs agree, else "<bb>|<kk>".
  std::string method() const;
};

// Pair results use value = df + i dg.

/// (d ber_nu/dnu, d bei_nu/dnu) from dJ_nu/dnu at e^{-i pi/4} x.
/// Requires nu > 0 non-integer and x > 0.
EvalResult dkelvin_bb_pos(double nu, double x, const SeriesConfig& cfg = {});

/// (d ker_nu/dnu, d kei_nu/dnu) from dK_nu/dnu at e^{i pi/4} x.
/// Requires nu > 0, 2nu non-integer and x > 0.
EvalResult dkelvin_kk_pos(double nu, double x, const SeriesConfig& cfg = {});

/// Derivative of the map nu -> (ber_{-nu}(x), bei_{-nu}(x)) for nu > 0.
/// Near excluded orders the dJ/dnu and dK/dnu factors are extrapolated; the
/// dK/dnu term is dropped where its sin(pi nu) weight vanishes.
EvalResult dkelvin_bb_neg(double nu, double x, const SeriesConfig& cfg = {});

/// Derivative of the map nu -> (ker_{-nu}(x), kei_{-nu}(x)) for nu > 0.
EvalResult dkelvin_kk_neg(double nu, double x, const SeriesConfig& cfg = {});

/// All four derivatives at integer order n >= 0 from the finite sums over
/// lower-order Kelvin functions. Throws OrderClassError for n < 0.
OrderDerivQuad dkelvin_integer(long n, double x, const SeriesConfig& cfg = {});

/// Dispatcher over every real order; x > 0 (DomainError otherwise).
///
///   |nu - n| <= 1e-9, n >= 0      integer sums
///   nu > 0                        closed forms, extrapolated within 1e-6 of
///                                 an excluded order
///   nu < 0                        negative-order forms at -nu, negated to
///                                 give d f_mu / d mu at mu = nu
OrderDerivQuad dkelvin(double nu, double x, const SeriesConfig& cfg = {});

/// Same as dkelvin but never routes to the integer sums: for nu >= 0 the
/// closed forms are used, extrapolated across excluded orders (including
/// integers). Cross-checks the integer-sum path.
OrderDerivQuad dkelvin_extrapolated(double nu, double x, const SeriesConfig& cfg = {});

/// Hypergeometric weights of the reference closed form:
/// c = 3F6(...; -x^4/16), d = 4F7(...; -x^4/16), a in {0, 1}.
EvalResult coef_c(double nu, double x, int a, const SeriesConfig& cfg = {});
EvalResult coef_d(double nu, double x, int a, const SeriesConfig& cfg = {});

/// Reference closed form for (d ber_nu/dnu, d bei_nu/dnu) in terms of
/// ber_{+-nu}, bei_{+-nu}, c and d. Requires nu > 0, nu not an integer.
EvalResult dkelvin_bb_brychkov(double nu, double x, const SeriesConfig& cfg = {});

}  // namespace kelvin

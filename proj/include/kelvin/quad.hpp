#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "kelvin/types.hpp"

namespace kelvin {

enum class SemiInfRule {
  doubling,  // [0,1], [1,2], [2,4], ... until the integrand is negligible
  exp_map,   // t = -log(1 - s) onto [0, 1)
};

struct QuadConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_depth = 30;
  SemiInfRule semiinf_rule = SemiInfRule::doubling;

  void validate() const;
};

/// Quadrature node with exact distances to both ends of the integration
/// interval, so integrands like log(1 - u) never see a rounded 1 - u.
struct Abscissa {
  double x;
  double from_lower;
  double from_upper;
};

using Integrand = std::function<double(const Abscissa&)>;

/// Adaptive Gauss-Kronrod (7/15) integration over [a, b].
///
/// Works on s in [0, 1] through u = a + (b-a) s^4 / (s^4 + (1-s)^4), which
/// flattens integrable power and log singularities at either end; nodes
/// never touch the endpoints. The interval with the largest |K15 - G7| is
/// bisected until the summed estimate meets max(abs_tol, rel_tol |I|).
/// Reaching max_depth returns the best estimate with converged = false.
EvalResult integrate_finite_ex(const Integrand& f, double a, double b, const QuadConfig& cfg = {});
EvalResult integrate_finite(const std::function<double(double)>& f, double a, double b,
                            const QuadConfig& cfg = {});

/// Integral over [0, inf) of a function with at least exponential decay.
/// The doubling rule stops once |f| < 1e-18 at the end of a panel whose
/// contribution is below tolerance.
EvalResult integrate_semiinf(const std::function<double(double)>& f, const QuadConfig& cfg = {});

/// ber_nu, bei_nu at argument `arg` from the two-part integral
/// representation (finite part over [0, pi], sin(pi nu)-weighted part over
/// [0, inf) with integrand e^{-nu t - x sinh t} {cos, sin}(x sinh t + pi nu)).
/// The representation is written for argument x sqrt 2; the rescaling is
/// internal. value = ber + i bei.
EvalResult apelblat_ber_bei(double nu, double arg, const QuadConfig& cfg = {});

/// Bracket inside the log-weighted integral for d ber/dnu, d bei/dnu.
enum class ApelblatBracket {
  printed_intro,  // ber_{nu-1} +- bei_nu
  printed_proof,  // ber_{nu-1} + bei_{nu-1} for both
  same_order,     // ber_nu +- bei_nu
  lowered_order,  // ber_{nu-1} +- bei_{nu-1}
};

std::string_view bracket_name(ApelblatBracket b);

/// (d ber_nu/dnu, d bei_nu/dnu) at x from
///   log(x/2) f -+ (3 pi/4) g -+ x/(2 sqrt 2) int_0^1 u^{(nu-1)/2} [gamma + log(1-u)] [...] du.
/// Only the lowered_order bracket reproduces the derivative; the others are
/// kept for comparison. At nu = 0 the nu -> 0+ limit of the leading term is
/// added explicitly. Requires nu >= 0, x > 0.
EvalResult apelblat_dber_dbei(double nu, double x,
                              ApelblatBracket bracket = ApelblatBracket::lowered_order,
                              const QuadConfig& cfg = {});

enum class TrigVariant { sin, cos };

/// ber(x), bei(x) = (2/pi) int_0^{pi/2} {cosh cos, sinh sin}(x sc(t)/sqrt 2) dt
/// with sc = sin or cos. value = ber + i bei.
EvalResult appendix_ber_bei(double x, TrigVariant variant, const QuadConfig& cfg = {});

struct IdentityReport {
  std::string name;
  double nu = 0.0;
  double x = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_diff = 0.0;
  double tol = 0.0;
  bool pass = false;
};

inline constexpr std::string_view kIdentityCsvHeader = "name,nu,x,lhs,rhs,abs_diff,tol,pass";

IdentityReport make_report(std::string name, double nu, double x, double lhs, double rhs,
                           double tol);

/// One CSV row (no trailing newline), columns as in kIdentityCsvHeader.
std::string to_csv_row(const IdentityReport& r);

enum class KelvinPart { ber, bei };

/// ber(2 sqrt(a t)) + ber(2 sqrt(b t)) against the convolution integral
/// over [0, t]. Requires a >= b > 0, t > 0. Reported with nu = 0, x = t.
IdentityReport convolution_identity(double a, double b, double t, const QuadConfig& cfg = {},
                                    double tol = 1e-7);

/// int_0^1 u^{nu+1} log(1-u^2) f_nu(x u) du against the closed form built
/// from f_{nu+1}, g_{nu+1} and dJ/dnu at order nu+1. Requires nu > -1, x > 0.
IdentityReport theorem5_identity(double nu, double x, KelvinPart f, const QuadConfig& cfg = {},
                                 double tol = 1e-7);

/// int_0^x u^{nu+1} f_nu(u) du against
/// (x^{nu+1}/sqrt 2)(bei_{nu+1} - ber_{nu+1}) for ber and
/// -(x^{nu+1}/sqrt 2)(bei_{nu+1} + ber_{nu+1}) for bei. Requires nu >= 0, x > 0.
IdentityReport indefinite_integral_check(double nu, double x, KelvinPart f,
                                         const QuadConfig& cfg = {}, double tol = 1e-9);

}  // namespace kelvin

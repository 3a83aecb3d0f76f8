#pragma once

#include "kelvin/types.hpp"

namespace kelvin {

enum class BesselKind { J, I, K };

/// Ascending-series accuracy is documented for |z| <= 20.
inline constexpr double kBesselArgCap = 20.0;

/// Half-widths for Richardson extrapolation across excluded orders.
inline constexpr double kExtrapDelta1 = 1e-3;
inline constexpr double kExtrapDelta2 = 5e-4;

/// Orders within this distance of an excluded order use the extrapolated
/// (J', K') path.
inline constexpr double kExcludedOrderWindow = 1e-6;

/// J_nu(z) by the ascending series on the principal branch of z^nu.
/// Throws BranchError for z = 0 with nu < 0.
EvalResult bessel_j(double nu, Complex z, const SeriesConfig& cfg = {});

/// I_nu(z), same conventions as bessel_j.
EvalResult bessel_i(double nu, Complex z, const SeriesConfig& cfg = {});

/// K_nu(z) = (pi/2)(I_{-nu}(z) - I_nu(z)) / sin(pi nu) for non-integer nu,
/// evaluated in long double. Integer orders use the logarithmic series;
/// within 5e-4 of an integer n, a cubic in nu - n through K_n, dK/dnu|_n and
/// K at n +- 1e-3 avoids the connection formula's 1/sin(pi nu) loss.
/// Throws ArgumentZeroError for z = 0.
EvalResult bessel_k(double nu, Complex z, const SeriesConfig& cfg = {});

EvalResult bessel(BesselKind kind, double nu, Complex z, const SeriesConfig& cfg = {});

/// dJ_nu(z)/dnu by the closed form in terms of J_{+-nu}, 2F3 and 3F4.
/// Requires nu > 0, nu not an integer, z != 0 (OrderClassError /
/// ArgumentZeroError otherwise).
EvalResult dj_dnu(double nu, Complex z, const SeriesConfig& cfg = {});

/// dK_nu(z)/dnu by the closed form in terms of I_{+-nu}, 3F4 and two 2F3,
/// evaluated in __float128. Requires nu > 0 and 2nu not an integer, z != 0.
EvalResult dk_dnu(double nu, Complex z, const SeriesConfig& cfg = {});

/// dj_dnu for any nu >= 0. Within kExcludedOrderWindow of an integer n the
/// closed form is evaluated at n +- delta for delta in {1e-3, 5e-4} and
/// Richardson-extrapolated in delta^2; the result is flagged `extrapolated`.
EvalResult dj_dnu_any(double nu, Complex z, const SeriesConfig& cfg = {});

/// dk_dnu for any nu >= 0, extrapolating across integers and half-integers.
/// At nu = 0 the derivative vanishes (K is even in nu).
EvalResult dk_dnu_any(double nu, Complex z, const SeriesConfig& cfg = {});

}  // namespace kelvin

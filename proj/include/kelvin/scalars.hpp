#pragma once

#include <numbers>

namespace kelvin {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kEulerGamma = std::numbers::egamma;
inline constexpr double kSqrt2 = std::numbers::sqrt2;

/// Orders closer than this to an integer (or half-integer, for the K-side
/// closed forms) are classified as that integer.
inline constexpr double kOrderClassTol = 1e-9;

/// Gamma function of a real argument.
///
/// Lanczos approximation (17 terms, 64-bit coefficient set) evaluated in
/// extended precision; reflection for x < 1/2. Accurate to about 1 ulp on
/// [-170, 170] away from the poles.
///
/// Throws PoleError at 0, -1, -2, ... and OverflowError when the result
/// exceeds the double range.
double gamma_real(double x);

/// 1/Gamma(x); entire, so returns exactly 0 at the poles of Gamma.
double rgamma_real(double x);

/// Digamma psi(x) = Gamma'(x)/Gamma(x). Throws PoleError at nonpositive
/// integers.
double digamma_real(double x);

/// sin(pi x) and cos(pi x) with exact argument reduction. Both are exactly 0
/// where they should be (sinpi at integers, cospi at half-integers).
double sinpi(double x);
double cospi(double x);

/// Nearest integer to x when |x - n| <= tol, else false.
bool near_integer(double x, double tol, long* n = nullptr);

}  // namespace kelvin

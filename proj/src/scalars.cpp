#include "kelvin/scalars.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "kelvin/types.hpp"
#include "extended.hpp"

namespace kelvin {

namespace {

using ld = long double;

constexpr ld kPiL = 3.141592653589793238462643383279502884L;

// Lanczos sum for g = 12.2252227365970611572265625, rational form
// sum(num[i] z^i) / sum(den[i] z^i). Coefficients designed for a 64-bit
// significand.
constexpr ld kLanczosG = 12.2252227365970611572265625L;

constexpr ld kLanczosNum[17] = {
    553681095419291969.2230556393350368550504L,
    731918863887667017.2511276782146694632234L,
    453393234285807339.4627124634539085143364L,
    174701893724452790.3546219631779712198035L,
    46866125995234723.82897281620357050883077L,
    9281280675933215.169109622777099699054272L,
    1403600894156674.551057997617468721789536L,
    165345984157572.7305349809894046783973837L,
    15333629842677.31531822808737907246817024L,
    1123152927963.956626161137169462874517318L,
    64763127437.92329018717775593533620578237L,
    2908830362.657527782848828237106640944457L,
    99764700.56999856729959383751710026787811L,
    2525791.604886139959837791244686290089331L,
    44516.94034970167828580039370201346554872L,
    488.0063567520005730476791712814838113252L,
    2.50662827463100050241576877135758834683L,
};

constexpr ld kLanczosDen[17] = {
    0.0L,           1307674368000.0L, 4339163001600.0L, 6165817614720.0L,
    5056995703824.0L, 2706813345600.0L, 1009672107080.0L, 272803210680.0L,
    54631129553.0L, 8207628000.0L,    928095740.0L,     78558480.0L,
    4899622.0L,     218400.0L,        6580.0L,          120.0L,
    1.0L,
};

ld lanczos_sum(ld z) {
  // Evaluate in 1/z for large z to keep the rational function well scaled.
  ld num = 0.0L;
  ld den = 0.0L;
  if (z <= 1.0L) {
    for (int i = 16; i >= 0; --i) {
      num = num * z + kLanczosNum[i];
      den = den * z + kLanczosDen[i];
    }
  } else {
    const ld w = 1.0L / z;
    for (int i = 0; i <= 16; ++i) {
      num = num * w + kLanczosNum[i];
      den = den * w + kLanczosDen[i];
    }
  }
  return num / den;
}

// Gamma for z >= 1/2 in extended precision.
ld gamma_positive(ld z) {
  if (z < 1.0L) {
    return gamma_positive(z + 1.0L) / z;
  }
  const ld zgh = z + kLanczosG - 0.5L;
  const ld half_power = std::pow(zgh, (z - 0.5L) / 2.0L);
  return lanczos_sum(z) * half_power / std::exp(zgh) * half_power;
}

ld sinpi_l(ld x) {
  // sin is odd; reduce |x| modulo 2 exactly.
  const bool negative = x < 0;
  ld r = std::fmod(std::fabs(x), 2.0L);
  ld sign = negative ? -1.0L : 1.0L;
  if (r >= 1.0L) {
    r -= 1.0L;
    sign = -sign;
  }
  if (r == 0.0L) {
    return 0.0L;
  }
  if (r > 0.5L) {
    r = 1.0L - r;
  }
  if (r <= 0.25L) {
    return sign * std::sin(kPiL * r);
  }
  return sign * std::cos(kPiL * (0.5L - r));
}

ld cospi_l(ld x) {
  ld r = std::fmod(std::fabs(x), 2.0L);
  ld sign = 1.0L;
  if (r >= 1.0L) {
    r -= 1.0L;
    sign = -1.0L;
  }
  if (r > 0.5L) {
    r = 1.0L - r;
    sign = -sign;
  }
  if (r == 0.5L) {
    return 0.0L;
  }
  if (r <= 0.25L) {
    return sign * std::cos(kPiL * r);
  }
  return sign * std::sin(kPiL * (0.5L - r));
}

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && std::floor(x) == x;
}

// Bernoulli numbers B_2 .. B_20 divided by 2k, for the digamma asymptotic
// series psi(x) ~ ln x - 1/(2x) - sum B_2k / (2k x^2k).
constexpr ld kDigammaAsym[10] = {
    1.0L / 12.0L,          -1.0L / 120.0L,         1.0L / 252.0L,
    -1.0L / 240.0L,        1.0L / 132.0L,          -691.0L / 32760.0L,
    1.0L / 12.0L,          -3617.0L / 8160.0L,     43867.0L / 14364.0L,
    -174611.0L / 6600.0L,
};

ld digamma_positive(ld x) {
  ld shift = 0.0L;
  while (x < 12.0L) {
    shift -= 1.0L / x;
    x += 1.0L;
  }
  const ld inv2 = 1.0L / (x * x);
  ld series = 0.0L;
  for (int k = 9; k >= 0; --k) {
    series = series * inv2 + kDigammaAsym[k];
  }
  series *= inv2;
  return shift + std::log(x) - 0.5L / x - series;
}

}  // namespace

double gamma_real(double x) {
  if (std::isnan(x)) {
    return x;
  }
  if (is_nonpositive_integer(x)) {
    throw PoleError(fmt::format("gamma_real: pole at x = {}", x));
  }
  ld result;
  if (x >= 0.5) {
    result = gamma_positive(x);
  } else {
    const ld xl = x;
    result = kPiL / (sinpi_l(xl) * gamma_positive(1.0L - xl));
  }
  if (std::fabs(result) > std::numeric_limits<double>::max()) {
    throw OverflowError(fmt::format("gamma_real: overflow at x = {}", x));
  }
  return static_cast<double>(result);
}

double rgamma_real(double x) {
  if (is_nonpositive_integer(x)) {
    return 0.0;
  }
  if (x >= 0.5) {
    return static_cast<double>(1.0L / gamma_positive(x));
  }
  const ld xl = x;
  return static_cast<double>(sinpi_l(xl) * gamma_positive(1.0L - xl) / kPiL);
}

double digamma_real(double x) {
  if (std::isnan(x)) {
    return x;
  }
  if (is_nonpositive_integer(x)) {
    throw PoleError(fmt::format("digamma_real: pole at x = {}", x));
  }
  if (x >= 0.5) {
    return static_cast<double>(digamma_positive(x));
  }
  // psi(x) = psi(1 - x) - pi cot(pi x)
  const ld xl = x;
  return static_cast<double>(digamma_positive(1.0L - xl) -
                             kPiL * cospi_l(xl) / sinpi_l(xl));
}

double sinpi(double x) { return static_cast<double>(sinpi_l(x)); }

double cospi(double x) { return static_cast<double>(cospi_l(x)); }

bool near_integer(double x, double tol, long* n) {
  const double r = std::nearbyint(x);
  if (std::fabs(x - r) <= tol) {
    if (n != nullptr) {
      *n = static_cast<long>(r);
    }
    return true;
  }
  return false;
}

namespace detail {

ld gamma_ld(ld x) {
  if (x <= 0 && std::floor(x) == x) {
    throw PoleError(fmt::format("gamma_ld: pole at x = {}", static_cast<double>(x)));
  }
  if (x >= 0.5L) {
    return gamma_positive(x);
  }
  return kPiL / (sinpi_l(x) * gamma_positive(1.0L - x));
}

ld rgamma_ld(ld x) {
  if (x <= 0 && std::floor(x) == x) {
    return 0.0L;
  }
  if (x >= 0.5L) {
    return 1.0L / gamma_positive(x);
  }
  return sinpi_l(x) * gamma_positive(1.0L - x) / kPiL;
}

ld digamma_ld(ld x) {
  if (x <= 0 && std::floor(x) == x) {
    throw PoleError(fmt::format("digamma_ld: pole at x = {}", static_cast<double>(x)));
  }
  if (x >= 0.5L) {
    return digamma_positive(x);
  }
  return digamma_positive(1.0L - x) - kPiL * cospi_l(x) / sinpi_l(x);
}

ld sinpi_ld(ld x) { return sinpi_l(x); }

ld cospi_ld(ld x) { return cospi_l(x); }

}  // namespace detail

}  // namespace kelvin

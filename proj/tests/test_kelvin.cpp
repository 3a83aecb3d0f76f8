#include <cmath>

#include <gtest/gtest.h>

#include "kelvin/kelvin.hpp"
#include "kelvin/scalars.hpp"
#include "support.hpp"

using namespace kelvin;
using kelvin::test::close;

namespace {

// Real ascending series for ber(x), bei(x).
std::pair<double, double> ber_bei_series(double x) {
  const double q = std::pow(x / 2.0, 4);
  double ber = 0.0;
  double bei = 0.0;
  double tr = 1.0;
  double ti = (x / 2.0) * (x / 2.0);
  for (int k = 0; k < 60; ++k) {
    ber += tr;
    bei += ti;
    tr *= -q / ((2.0 * k + 1) * (2.0 * k + 1) * (2.0 * k + 2) * (2.0 * k + 2));
    ti *= -q / ((2.0 * k + 2) * (2.0 * k + 2) * (2.0 * k + 3) * (2.0 * k + 3));
  }
  return {ber, bei};
}

struct Ref {
  double nu;
  double x;
  double ber, bei, ker, kei;
};

// mpmath ber/bei/ker/kei, 40 digits
const Ref kRefs[] = {
    {0.0, 1.0, 0.98438178121308688, 0.24956604003665972, 0.28670620872831605, -0.4949946365187199},
    {0.5, 2.0, -0.30723832940736059, 1.1866254030162642, -0.18376286013993981, -0.11248447016892773},
    {2.3, 5.0, 2.7190535376089344, 3.3104854258715018, 0.00012421334697451891, -0.023270601140920624},
    {-1.7, 3.0, 1.180872543781879, -0.74804774989774336, 0.11698803688066125, -0.010694970517778631},
    {-0.5, 2.0, 1.06963833282436, 0.23562849161352982, 0.11248447016892773, -0.18376286013993981},
    {3.0, 10.0, 72.253359879554667, -81.422860620791618, 0.00045628312206011732, 4.7332978043245035e-5},
    {0.25, 0.5, 0.62653060850940985, 0.46554258002819937, 0.53171317739415399, -0.99170080208328877},
};

}  // namespace

TEST(KelvinBerBei, Origin) {
  EXPECT_EQ(kelvin_ber_bei(0.0, 0.0).value, Complex(1.0, 0.0));
  EXPECT_EQ(kelvin_ber_bei(0.5, 0.0).value, Complex(0.0, 0.0));
  EXPECT_TRUE(close(kelvin_ber_bei(-2.0, 0.0).value, 0.0, 0.0));
  EXPECT_THROW(kelvin_ber_bei(-0.5, 0.0), DomainError);
  EXPECT_THROW(kelvin_ber_bei(0.5, -1.0), DomainError);
}

TEST(KelvinBerBei, IntegerReflection) {
  const Complex neg = kelvin_ber_bei(-1.0, 3.0).value;
  const Complex pos = kelvin_ber_bei(1.0, 3.0).value;
  EXPECT_EQ(neg, -pos);
}

TEST(KelvinBerBei, MatchesRealSeries) {
  for (double x : {0.1, 0.5, 1.0, 2.0, 4.0, 7.0, 10.0}) {
    const auto [ber, bei] = ber_bei_series(x);
    const Complex w = kelvin_ber_bei(0.0, x).value;
    EXPECT_NEAR(w.real(), ber, 1e-11) << "x = " << x;
    EXPECT_NEAR(w.imag(), bei, 1e-11) << "x = " << x;
  }
}

TEST(KelvinKerKei, HalfOrder) {
  const double x = 1.0;
  const Complex z = x * std::polar(1.0, kPi / 4.0);
  const Complex k = std::sqrt(kPi / (2.0 * z)) * std::exp(-z);
  const Complex ref = std::polar(1.0, -kPi / 4.0) * k;
  EXPECT_TRUE(close(kelvin_ker_kei(0.5, x).value, ref, 1e-14));
}

TEST(KelvinKerKei, HalfOrderReflection) {
  const Complex pos = kelvin_ker_kei(0.5, 2.0).value;
  const Complex neg = kelvin_ker_kei(-0.5, 2.0).value;
  EXPECT_TRUE(close(neg, {-pos.imag(), pos.real()}, 1e-15));
}

TEST(KelvinKerKei, Domain) {
  EXPECT_THROW(kelvin_ker_kei(0.0, 0.0), DomainError);
  EXPECT_THROW(kelvin_ker_kei(1.0, -2.0), DomainError);
  EXPECT_THROW(kelvin_all(1.0, 0.0), DomainError);
}

TEST(Kelvin, ReferenceValues) {
  for (const Ref& r : kRefs) {
    const KelvinQuad q = kelvin_all(r.nu, r.x);
    const double tol = r.x > 5.0 ? 1e-10 : 1e-13;
    EXPECT_TRUE(close(q.ber, r.ber, tol)) << r.nu << ", " << r.x;
    EXPECT_TRUE(close(q.bei, r.bei, tol)) << r.nu << ", " << r.x;
    EXPECT_TRUE(close(q.ker, r.ker, tol)) << r.nu << ", " << r.x;
    EXPECT_TRUE(close(q.kei, r.kei, tol)) << r.nu << ", " << r.x;
    EXPECT_FALSE(q.degraded);
  }
}

TEST(Kelvin, AllMatchesSeparateCalls) {
  for (double nu : {-2.6, -1.0, 0.0, 0.4, 3.0}) {
    const KelvinQuad q = kelvin_all(nu, 2.5);
    const Complex w = kelvin_ber_bei(nu, 2.5).value;
    const Complex k = kelvin_ker_kei(nu, 2.5).value;
    EXPECT_TRUE(close(q.ber, w.real(), 1e-15));
    EXPECT_TRUE(close(q.bei, w.imag(), 1e-15));
    EXPECT_TRUE(close(q.ker, k.real(), 1e-15));
    EXPECT_TRUE(close(q.kei, k.imag(), 1e-15));
  }
}

TEST(Kelvin, EvenIntegerReflection) {
  const KelvinQuad a = kelvin_all(-2.0, 0.5);
  const KelvinQuad b = kelvin_all(2.0, 0.5);
  EXPECT_EQ(a.ber, b.ber);
  EXPECT_EQ(a.bei, b.bei);
  EXPECT_EQ(a.ker, b.ker);
  EXPECT_EQ(a.kei, b.kei);
}

TEST(Kelvin, DegradedOutsideEnvelope) {
  EXPECT_TRUE(kelvin_all(1.0, 25.0).degraded);
  EXPECT_TRUE(kelvin_all(11.0, 2.0).degraded);
  EXPECT_FALSE(kelvin_all(10.0, 20.0).degraded);
}

TEST(KelvinProperty, IntegerReflectionAllFour) {
  for (int n = 0; n <= 5; ++n) {
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    for (double x : {0.5, 1.0, 2.0, 5.0}) {
      const KelvinQuad neg = kelvin_all(-n, x);
      const KelvinQuad pos = kelvin_all(n, x);
      EXPECT_LE(std::fabs(neg.ber - sign * pos.ber), 1e-12 * std::fabs(pos.ber));
      EXPECT_LE(std::fabs(neg.bei - sign * pos.bei), 1e-12 * std::fabs(pos.bei));
      EXPECT_LE(std::fabs(neg.ker - sign * pos.ker), 1e-12 * std::fabs(pos.ker));
      EXPECT_LE(std::fabs(neg.kei - sign * pos.kei), 1e-12 * std::fabs(pos.kei));
    }
  }
}

TEST(KelvinProperty, OdeResidual) {
  const double h = 1e-3;
  const auto residual = [&](double nu, double x, auto w) {
    const Complex d1 = (-w(x + 2 * h) + 8.0 * w(x + h) - 8.0 * w(x - h) + w(x - 2 * h)) / (12 * h);
    const Complex d2 =
        (-w(x + 2 * h) + 16.0 * w(x + h) - 30.0 * w(x) + 16.0 * w(x - h) - w(x - 2 * h)) /
        (12 * h * h);
    const Complex r = x * x * d2 + x * d1 - Complex(nu * nu, x * x) * w(x);
    return std::abs(r) / (std::abs(w(x)) + std::abs(x * d1) + std::abs(x * x * d2));
  };
  for (double nu : {-2.5, -0.6, 0.0, 0.5, 1.0, 3.3}) {
    for (double x : {0.5, 1.5, 3.0, 5.0}) {
      EXPECT_LE(residual(nu, x, [&](double y) { return kelvin_ber_bei(nu, y).value; }), 1e-5);
      EXPECT_LE(residual(nu, x, [&](double y) { return kelvin_ker_kei(nu, y).value; }), 1e-5);
    }
  }
}

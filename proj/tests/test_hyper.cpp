#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "kelvin/hyper.hpp"
#include "support.hpp"

using namespace kelvin;
using kelvin::test::close;

TEST(Pfq, ZeroArgumentIsOne) {
  const double nu = 0.7;
  const EvalResult r = pfq({{nu, nu + 0.5}, {nu + 1.0, nu + 1.0, 2.0 * nu + 1.0}, 0.0});
  EXPECT_EQ(r.value, Complex(1.0, 0.0));
  EXPECT_TRUE(r.converged);
}

TEST(Pfq, BesselJ0) {
  // 0F1(; 1; -x^2/4) = J_0(x), x = 2; mpmath
  const EvalResult r = pfq({{}, {1.0}, -1.0});
  EXPECT_TRUE(close(r.value, 0.22389077914123567, 1e-15));
}

TEST(Pfq, FirstOrderCoefficient) {
  const double nu = 0.4;
  const Complex z{1e-7, 0.0};
  const EvalResult r = pfq({{1.0, 1.0, 1.5}, {2.0, 2.0, 2.0 - nu, 2.0 + nu}, z});
  const double slope = ((r.value - 1.0) / z).real();
  EXPECT_NEAR(slope, 3.0 / (8.0 * (4.0 - nu * nu)), 1e-3);
}

// mpmath, 40 digits
TEST(Pfq, ReferenceValuesComplexArgument) {
  const EvalResult a = pfq({{0.3, 0.8}, {1.3, 1.3, 1.6}, Complex(0.0, -4.0)});
  EXPECT_TRUE(close(a.value, {0.88306506196150505, -0.32897800583357468}, 1e-15));
  const EvalResult b = pfq({{1.0, 1.0, 1.5}, {2.0, 2.0, 1.7, 2.3}, Complex(0.0, 9.0)});
  EXPECT_TRUE(close(b.value, {0.56109598434926848, 0.69215932968918448}, 1e-15));
}

TEST(Pfq, DenominatorPole) {
  EXPECT_THROW(pfq({{1.0}, {-2.0}, 0.5}), DenominatorPoleError);
  EXPECT_THROW(pfq({{1.0}, {0.0, 1.5}, 0.5}), DenominatorPoleError);
}

TEST(Pfq, RejectsDivergentShapes) {
  EXPECT_THROW(pfq({{1.0, 2.0}, {1.5}, 0.5}), ConfigError);
}

TEST(Pfq, BadConfig) {
  SeriesConfig cfg;
  cfg.rel_tol = 0.0;
  EXPECT_THROW(pfq({{}, {1.0}, 1.0}, cfg), ConfigError);
  cfg = {};
  cfg.max_terms = 0;
  EXPECT_THROW(pfq({{}, {1.0}, 1.0}, cfg), ConfigError);
}

TEST(Pfq, TermCapReportsNonConvergence) {
  SeriesConfig cfg;
  cfg.max_terms = 3;
  const EvalResult r = pfq({{}, {1.0}, Complex(-30.0, 10.0)}, cfg);
  EXPECT_FALSE(r.converged);
  EXPECT_TRUE(std::isfinite(r.value.real()));
}

TEST(Pfq, ConvergedImpliesErrorBound) {
  const SeriesConfig cfg;
  for (double x : {0.5, 2.0, 8.0, 20.0}) {
    const EvalResult r = pfq({{0.25, 0.75}, {1.25, 1.25, 1.5}, Complex(0.0, -x * x)}, cfg);
    ASSERT_TRUE(r.converged);
    EXPECT_LE(r.abs_err, cfg.rel_tol * (1.0 + std::abs(r.value)));
  }
}

TEST(PfqProperty, MatchedPairCancels) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> param(0.1, 3.0);
  std::uniform_real_distribution<double> coord(-7.0, 7.0);
  std::uniform_int_distribution<int> count(0, 2);
  for (int i = 0; i < 100; ++i) {
    HyperSpec base;
    const int p = count(rng);
    const int q = p + count(rng);
    for (int k = 0; k < p; ++k) base.upper.push_back(param(rng));
    for (int k = 0; k < q; ++k) base.lower.push_back(param(rng));
    base.z = {coord(rng), coord(rng)};
    HyperSpec padded = base;
    const double a = param(rng);
    padded.upper.push_back(a);
    padded.lower.push_back(a);
    const Complex r0 = pfq(base).value;
    const Complex r1 = pfq(padded).value;
    EXPECT_LE(std::abs(r1 - r0), 1e-13 * std::abs(r0)) << "case " << i;
  }
}

TEST(PfqProperty, ConjugationIsExact) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> param(0.1, 3.0);
  std::uniform_real_distribution<double> coord(-20.0, 20.0);
  for (int i = 0; i < 50; ++i) {
    HyperSpec s{{param(rng), param(rng)}, {param(rng), param(rng), param(rng)},
                {coord(rng), coord(rng)}};
    HyperSpec c = s;
    c.z = std::conj(s.z);
    EXPECT_EQ(pfq(c).value, std::conj(pfq(s).value));
  }
}

TEST(PfqProperty, TermCountUpToModulus400) {
  for (double x : {1.0, 5.0, 10.0, 15.0, 20.0}) {
    const double nu = 1.3;
    const std::vector<HyperSpec> specs = {
        {{nu / 2, (nu + 1) / 2}, {nu + 1, nu + 1, 2 * nu + 1}, Complex(0.0, x * x)},
        {{nu / 2, (nu + 1) / 2}, {nu + 1, nu + 1, 2 * nu + 1}, Complex(0.0, -x * x)},
        {{1.0, 1.0, 1.5}, {2.0, 2.0, 2.0 - nu, 2.0 + nu}, Complex(0.0, x * x)},
        {{(2 * nu + 1) / 4, (2 * nu + 3) / 4, nu / 2},
         {0.5, (nu + 1) / 2, nu / 2 + 1, nu / 2 + 1, nu + 0.5, nu + 1},
         -std::pow(x, 4) / 16.0},
    };
    for (const auto& s : specs) {
      if (std::abs(s.z) > 400.0) continue;
      const EvalResult r = pfq(s);
      EXPECT_TRUE(r.converged) << "x = " << x;
      EXPECT_LE(r.terms, 400) << "x = " << x;
    }
  }
}

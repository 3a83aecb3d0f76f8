#pragma once

#include <cmath>
#include <complex>

#include <gtest/gtest.h>

namespace kelvin::test {

// |actual - expected| <= tol * max(1, |expected|)
inline ::testing::AssertionResult close(double actual, double expected, double tol) {
  const double scale = std::max(1.0, std::fabs(expected));
  const double diff = std::fabs(actual - expected);
  if (diff <= tol * scale) {
    return ::testing::AssertionSuccess();
  }
  return ::testing::AssertionFailure() << "actual " << actual << " expected " << expected
                                       << " diff " << diff << " > " << tol * scale;
}

inline ::testing::AssertionResult close(std::complex<double> actual, std::complex<double> expected,
                                        double tol) {
  const double scale = std::max(1.0, std::abs(expected));
  const double diff = std::abs(actual - expected);
  if (diff <= tol * scale) {
    return ::testing::AssertionSuccess();
  }
  return ::testing::AssertionFailure() << "actual " << actual << " expected " << expected
                                       << " diff " << diff << " > " << tol * scale;
}

inline ::testing::AssertionResult rel_close(double actual, double expected, double rel) {
  const double diff = std::fabs(actual - expected);
  if (diff <= rel * std::fabs(expected)) {
    return ::testing::AssertionSuccess();
  }
  return ::testing::AssertionFailure() << "actual " << actual << " expected " << expected
                                       << " rel diff " << diff / std::fabs(expected);
}

}  // namespace kelvin::test

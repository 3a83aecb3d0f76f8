#pragma once

#include <cmath>
#include <complex>

namespace kelvin {

// Neumaier's improved Kahan summation. Requires strict IEEE evaluation order
// (no -ffast-math, no FMA contraction).
template <class T>
class BasicCompensatedSum {
 public:
  void add(T v) {
    const T t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  T value() const { return sum_ + carry_; }

 private:
  T sum_ = 0;
  T carry_ = 0;
};

/// Componentwise compensated sum of complex terms.
template <class T>
class BasicCompensatedComplexSum {
 public:
  void add(std::complex<T> v) {
    re_.add(v.real());
    im_.add(v.imag());
  }

  std::complex<T> value() const { return {re_.value(), im_.value()}; }

 private:
  BasicCompensatedSum<T> re_;
  BasicCompensatedSum<T> im_;
};

using CompensatedSum = BasicCompensatedSum<double>;
using CompensatedComplexSum = BasicCompensatedComplexSum<double>;

}  // namespace kelvin

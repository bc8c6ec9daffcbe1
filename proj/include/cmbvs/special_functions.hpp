#pragma once

#include <cmath>

#include "cmbvs/errors.hpp"

namespace cmbvs {

// lgamma without the signgam global (arguments here are always positive).
inline double log_gamma(double x) {
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

// Digamma via upward recurrence to x >= 8 followed by the asymptotic series
// psi(x) ~ ln x - 1/(2x) - sum B_2k / (2k x^{2k}). Absolute error < 1e-13 on
// the positive axis.
inline double digamma(double x) {
  if (!(x > 0.0)) throw DomainError("digamma: argument must be positive");
  double result = 0.0;
  while (x < 8.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // Coefficients B_2k/(2k) for k = 1..6.
  const double series =
      inv2 * (1.0 / 12.0 -
              inv2 * (1.0 / 120.0 -
                      inv2 * (1.0 / 252.0 -
                              inv2 * (1.0 / 240.0 -
                                      inv2 * (1.0 / 132.0 -
                                              inv2 * (691.0 / 32760.0))))));
  return result + std::log(x) - 0.5 * inv - series;
}

}  // namespace cmbvs

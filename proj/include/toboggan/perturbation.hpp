#pragma once

// First-order energies E_n = 2n + 1 + (eps/2) psi((2 ceil(n/2) + 1) / 2)
// around the harmonic oscillator, with a self-contained digamma.

#include <cmath>
#include <limits>
#include <numbers>

#include "toboggan/errors.hpp"

namespace toboggan {

/// psi(x) = d/dx log Gamma(x) for x > 0. Shifts x above 8 with
/// psi(x) = psi(x + 1) - 1/x, then sums the asymptotic series
/// ln x - 1/(2x) - sum B_2k / (2k x^2k).
inline double digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("digamma: argument must be positive and finite");
  double shift = 0.0;
  while (x < 8.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  // B2/2, B4/4, ..., B14/14
  const double series =
      inv2 * (1.0 / 12 -
              inv2 * (1.0 / 120 -
                      inv2 * (1.0 / 252 -
                              inv2 * (1.0 / 240 -
                                      inv2 * (1.0 / 132 - inv2 * (691.0 / 32760 - inv2 / 12.0))))));
  return shift + std::log(x) - 0.5 / x - series;
}

struct FirstOrderCoefficient {
  int n = 0;
  double base = 1.0;   // 2n + 1
  double slope = 0.0;  // dE_n/d eps at eps = 0
};

inline FirstOrderCoefficient first_order_coefficient(int n) {
  if (n < 0) throw InvalidArgument("first_order_coefficient: level index must be non-negative");
  const int half_up = (n + 1) / 2;  // ceil(n/2)
  return {n, 2.0 * n + 1.0, 0.5 * digamma((2.0 * half_up + 1.0) / 2.0)};
}

inline double first_order_energy(int n, double epsilon) {
  const FirstOrderCoefficient c = first_order_coefficient(n);
  return c.base + epsilon * c.slope;
}

}  // namespace toboggan

#pragma once

#include <cfloat>
#include <complex>
#include <cstdint>

#include "waring/int128.hpp"

namespace waring {

/// frac(alpha * m) in [0, 1). alpha is taken as the exact dyadic rational
/// the double represents and the product is formed exactly in 192 bits, so
/// the only rounding is the final conversion to double.
double frac_product(double alpha, u128 m);

/// frac(r / q) for q >= 1.
double frac_ratio(std::uint64_t r, std::uint64_t q);

/// frac(a + b) for a, b in [0, 1).
inline double add_phase(double a, double b) {
  double s = a + b;
  return s >= 1.0 ? s - 1.0 : s;
}

/// frac(-a) for a in [0, 1).
inline double negate_phase(double a) { return a == 0.0 ? 0.0 : 1.0 - a; }

/// e(phase) = exp(2 pi i phase).
std::complex<double> unit_root(double phase);

/// Rounding budget of one unit_root term: phase rounding (2 pi ulp(1)) plus
/// sin/cos error.
inline constexpr double kTermError = 5.0 * DBL_EPSILON;

}  // namespace waring

#include "waring/phase.hpp"

#include <cmath>
#include <numbers>

namespace waring {

namespace {

// low 64 and high 64 bits of a * b
inline void mul_64x64(std::uint64_t a, std::uint64_t b, std::uint64_t& lo, std::uint64_t& hi) {
  const u128 p = static_cast<u128>(a) * b;
  lo = static_cast<std::uint64_t>(p);
  hi = static_cast<std::uint64_t>(p >> 64);
}

// Error-free sum of doubles into a (hi, lo) pair.
struct TwoSum {
  double hi = 0, lo = 0;
  void add(double x) {
    const double s = hi + x;
    const double bp = s - hi;
    const double err = (hi - (s - bp)) + (x - bp);
    hi = s;
    lo += err;
  }
  double value() const { return hi + lo; }
};

}  // namespace

double frac_product(double alpha, u128 m) {
  if (alpha == 0.0 || m == 0) return 0.0;
  int exponent = 0;
  const double mantissa = std::frexp(alpha, &exponent);
  // alpha = signed_a * 2^-shift with |signed_a| < 2^53
  auto signed_a = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  int shift = 53 - exponent;
  if (shift <= 0) return 0.0;  // alpha is an integer
  while ((signed_a & 1) == 0 && shift > 0) {
    signed_a /= 2;
    --shift;
  }
  if (shift == 0) return 0.0;
  const bool negative = signed_a < 0;
  const auto a = static_cast<std::uint64_t>(negative ? -signed_a : signed_a);

  // 192-bit product a * m as limbs l0 + l1 2^64 + l2 2^128
  const auto m_lo = static_cast<std::uint64_t>(m);
  const auto m_hi = static_cast<std::uint64_t>(m >> 64);
  std::uint64_t p0_lo, p0_hi, p1_lo, p1_hi;
  mul_64x64(a, m_lo, p0_lo, p0_hi);
  mul_64x64(a, m_hi, p1_lo, p1_hi);
  std::uint64_t limbs[3];
  limbs[0] = p0_lo;
  limbs[1] = p0_hi + p1_lo;
  limbs[2] = p1_hi + (limbs[1] < p0_hi ? 1 : 0);

  // keep the bits below 2^shift: that is (a*m mod 2^shift)
  for (int i = 0; i < 3; ++i) {
    const int lo_bit = 64 * i;
    if (shift <= lo_bit) {
      limbs[i] = 0;
    } else if (shift < lo_bit + 64) {
      limbs[i] &= (std::uint64_t{1} << (shift - lo_bit)) - 1;
    }
  }

  TwoSum acc;
  for (int i = 2; i >= 0; --i) {
    // each limb splits into two exactly representable 32-bit halves
    const auto hi32 = static_cast<double>(limbs[i] >> 32);
    const auto lo32 = static_cast<double>(limbs[i] & 0xffffffffULL);
    acc.add(std::ldexp(hi32, 64 * i + 32 - shift));
    acc.add(std::ldexp(lo32, 64 * i - shift));
  }
  double f = acc.value();
  if (f >= 1.0) f = std::nextafter(1.0, 0.0);  // rounding up against 1
  if (negative) f = negate_phase(f);
  return f >= 1.0 ? 0.0 : f;
}

double frac_ratio(std::uint64_t r, std::uint64_t q) {
  r %= q;
  return static_cast<double>(r) / static_cast<double>(q);
}

std::complex<double> unit_root(double phase) {
  if (phase >= 0.5) phase -= 1.0;
  const double angle = 2.0 * std::numbers::pi * phase;
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace waring

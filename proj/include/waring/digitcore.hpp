#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "waring/rational.hpp"

namespace waring {

/// Thue-Morse sign: +1 when the binary expansion has an even number of ones.
class EpsilonSign {
 public:
  constexpr explicit EpsilonSign(int value) : value_(value == 1 ? 1 : -1) {}
  constexpr int value() const { return value_; }
  constexpr operator int() const { return value_; }  // NOLINT
  constexpr EpsilonSign operator*(EpsilonSign o) const {
    return EpsilonSign(value_ * o.value_);
  }
  constexpr EpsilonSign operator-() const { return EpsilonSign(-value_); }
  friend constexpr bool operator==(EpsilonSign, EpsilonSign) = default;

 private:
  int value_;
};

enum class DigitClass : std::uint8_t { Class0 = 0, Class1 = 1 };

struct Base4Stats {
  std::uint32_t kappa12 = 0;
  std::vector<std::uint8_t> digits;  // least significant first; empty for 0
};

// epsilon(0) is +1: zero ones is an even count.
constexpr EpsilonSign epsilon(std::uint64_t n) {
  return EpsilonSign((std::popcount(n) & 1) == 0 ? 1 : -1);
}

/// Raw +1/-1 for hot loops.
constexpr int epsilon_value(std::uint64_t n) {
  return 1 - 2 * (std::popcount(n) & 1);
}

/// Class of a natural number. Throws std::domain_error for n = 0, which
/// belongs to neither class.
DigitClass classify(std::uint64_t n);

Base4Stats kappa12(std::uint64_t h1);

/// Just the count of base-4 digits equal to 1 or 2.
constexpr std::uint32_t kappa12_count(std::uint64_t h1) {
  std::uint32_t c = 0;
  for (; h1 != 0; h1 >>= 2) {
    const auto d = h1 & 3U;
    c += (d == 1 || d == 2) ? 1 : 0;
  }
  return c;
}

/// Sum over h1 in [0, 4^t) of (3/4)^kappa12(h1), exactly. Requires
/// 1 <= t <= 20. Direct enumeration up to t = 12; above that the sum is
/// taken over the digit-count histogram built by per-digit convolution.
Rational identity_sum(unsigned t);

/// Checks eps(2^K y + m) eps(2^K y + m + h) == eps(m) eps(m + h) for all
/// 0 <= m < 2^K - h and 0 <= y <= y_max. Requires 1 <= h < 2^K, K <= 62.
bool progression_identity_check(unsigned K, std::uint64_t h, std::uint64_t y_max);

/// Number of members of N0 in [1, limit], by direct enumeration.
std::uint64_t class0_census(std::uint64_t limit);

}  // namespace waring

#include "waring/digitcore.hpp"

#include <stdexcept>
#include <string>

namespace waring {

DigitClass classify(std::uint64_t n) {
  if (n == 0) throw std::domain_error("classify: 0 is not a natural number");
  return epsilon_value(n) == 1 ? DigitClass::Class0 : DigitClass::Class1;
}

Base4Stats kappa12(std::uint64_t h1) {
  Base4Stats stats;
  for (; h1 != 0; h1 >>= 2) {
    const auto d = static_cast<std::uint8_t>(h1 & 3U);
    stats.digits.push_back(d);
    if (d == 1 || d == 2) ++stats.kappa12;
  }
  return stats;
}

Rational identity_sum(unsigned t) {
  if (t < 1 || t > 20)
    throw std::out_of_range("identity_sum: t must be in [1, 20], got " +
                            std::to_string(t));

  // histogram[s] = #{h1 < 4^t : kappa12(h1) = s}
  std::vector<i128> histogram(t + 1, 0);
  if (t <= 12) {
    const std::uint64_t limit = std::uint64_t{1} << (2 * t);
    for (std::uint64_t h1 = 0; h1 < limit; ++h1) ++histogram[kappa12_count(h1)];
  } else {
    // each base-4 digit contributes two values with kappa 0 and two with 1
    histogram[0] = 1;
    for (unsigned digit = 0; digit < t; ++digit) {
      std::vector<i128> next(t + 1, 0);
      for (unsigned s = 0; s <= digit; ++s) {
        next[s] += 2 * histogram[s];
        next[s + 1] += 2 * histogram[s];
      }
      histogram = std::move(next);
    }
  }

  // Common denominator 4^t: term (3/4)^s = 3^s 4^(t-s) / 4^t.
  i128 numerator = 0;
  for (unsigned s = 0; s <= t; ++s) {
    i128 term = histogram[s];
    for (unsigned i = 0; i < s; ++i) term = checked_mul(term, 3);
    for (unsigned i = s; i < t; ++i) term = checked_mul(term, 4);
    numerator = checked_add(numerator, term);
  }
  return Rational(numerator, static_cast<i128>(1) << (2 * t));
}

bool progression_identity_check(unsigned K, std::uint64_t h, std::uint64_t y_max) {
  if (K == 0 || K > 62) throw std::out_of_range("progression_identity_check: K must be in [1, 62]");
  const std::uint64_t block = std::uint64_t{1} << K;
  if (h == 0 || h >= block)
    throw std::out_of_range("progression_identity_check: need 1 <= h < 2^K");
  for (std::uint64_t m = 0; m < block - h; ++m) {
    const int reference = epsilon_value(m) * epsilon_value(m + h);
    for (std::uint64_t y = 0; y <= y_max; ++y) {
      const std::uint64_t x = (y << K) + m;
      if (epsilon_value(x) * epsilon_value(x + h) != reference) return false;
    }
  }
  return true;
}

std::uint64_t class0_census(std::uint64_t limit) {
  std::uint64_t count = 0;
  for (std::uint64_t n = 1; n <= limit; ++n) count += epsilon_value(n) == 1 ? 1 : 0;
  return count;
}

}  // namespace waring

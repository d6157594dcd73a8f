#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace waring {

using i128 = __int128;
using u128 = unsigned __int128;

inline i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("128-bit addition overflow");
  return r;
}

inline i128 checked_sub(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r))
    throw std::overflow_error("128-bit subtraction overflow");
  return r;
}

inline i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("128-bit multiplication overflow");
  return r;
}

inline i128 abs128(i128 a) {
  if (a == -a && a != 0) throw std::overflow_error("abs of INT128_MIN");
  return a < 0 ? -a : a;
}

// x^e as unsigned 128-bit, throwing when the power does not fit.
inline u128 checked_pow(std::uint64_t x, unsigned e) {
  u128 r = 1;
  for (unsigned i = 0; i < e; ++i) {
    u128 next;
    if (__builtin_mul_overflow(r, static_cast<u128>(x), &next))
      throw std::overflow_error("power " + std::to_string(x) + "^" +
                                std::to_string(e) + " exceeds 128 bits");
    r = next;
  }
  return r;
}

std::string to_string(i128 v);
std::string to_string(u128 v);
i128 parse_i128(std::string_view s);

}  // namespace waring

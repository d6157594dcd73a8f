#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "waring/int128.hpp"

namespace waring::ntt {

struct Prime {
  std::uint32_t modulus;
  std::uint32_t generator;  // primitive root
};

// p - 1 divisible by 2^23 for each; products of two residues fit in 64 bits.
inline constexpr std::array<Prime, 5> kPrimes = {{
    {998244353U, 3U},   // 119 * 2^23 + 1
    {167772161U, 3U},   // 5 * 2^25 + 1
    {469762049U, 3U},   // 7 * 2^26 + 1
    {754974721U, 11U},  // 45 * 2^24 + 1
    {1224736769U, 3U},  // 73 * 2^24 + 1
}};

inline constexpr std::size_t kMaxTransformLength = std::size_t{1} << 23;

std::uint32_t pow_mod(std::uint32_t base, std::uint64_t exp, std::uint32_t mod);

/// In-place forward (inverse = false) or inverse transform; a.size() must
/// be a power of two no larger than kMaxTransformLength.
void transform(std::vector<std::uint32_t>& a, const Prime& prime, bool inverse);

/// Fewest leading primes whose product exceeds 2 * bound + 1; throws
/// std::overflow_error when even all of them (or 2^127) are not enough.
std::size_t primes_needed(u128 bound);

/// Exact linear convolution of signed integer sequences whose output
/// coefficients are bounded by `bound` in absolute value, truncated to
/// out_len entries. Residues are reconstructed with Garner's algorithm
/// after shifting every coefficient by +bound.
std::vector<i128> convolve_exact(std::span<const i128> a, std::span<const i128> b,
                                 std::size_t out_len, u128 bound, unsigned threads = 1);

}  // namespace waring::ntt

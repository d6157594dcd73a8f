#include "waring/ntt.hpp"

#include <bit>
#include <stdexcept>
#include <string>
#include <utility>

#include "waring/errors.hpp"
#include "waring/parallel.hpp"

namespace waring::ntt {

std::uint32_t pow_mod(std::uint32_t base, std::uint64_t exp, std::uint32_t mod) {
  std::uint64_t result = 1 % mod;
  std::uint64_t b = base % mod;
  while (exp != 0) {
    if (exp & 1U) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

void transform(std::vector<std::uint32_t>& a, const Prime& prime, bool inverse) {
  const std::size_t len = a.size();
  if (!std::has_single_bit(len) || len > kMaxTransformLength)
    throw std::invalid_argument("ntt: length must be a power of two up to 2^23");
  const std::uint64_t mod = prime.modulus;

  for (std::size_t i = 1, j = 0; i < len; ++i) {
    std::size_t bit = len >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  for (std::size_t half = 1; half < len; half <<= 1) {
    std::uint64_t root = pow_mod(prime.generator, (mod - 1) / (2 * half), prime.modulus);
    if (inverse) root = pow_mod(static_cast<std::uint32_t>(root), mod - 2, prime.modulus);
    std::vector<std::uint32_t> twiddles(half);
    twiddles[0] = 1;
    for (std::size_t k = 1; k < half; ++k)
      twiddles[k] = static_cast<std::uint32_t>(twiddles[k - 1] * root % mod);
    for (std::size_t start = 0; start < len; start += 2 * half) {
      for (std::size_t k = 0; k < half; ++k) {
        const std::uint64_t u = a[start + k];
        const std::uint64_t v = a[start + k + half] * static_cast<std::uint64_t>(twiddles[k]) % mod;
        a[start + k] = static_cast<std::uint32_t>(u + v >= mod ? u + v - mod : u + v);
        a[start + k + half] = static_cast<std::uint32_t>(u >= v ? u - v : u + mod - v);
      }
    }
  }

  if (inverse) {
    const std::uint64_t inv_len = pow_mod(static_cast<std::uint32_t>(len % mod), mod - 2, prime.modulus);
    for (auto& x : a) x = static_cast<std::uint32_t>(x * inv_len % mod);
  }
}

std::size_t primes_needed(u128 bound) {
  if (bound >> 125 != 0)
    throw std::overflow_error("coefficient bound exceeds 2^125; big-integer mode required");
  const u128 target = 2 * bound + 1;
  u128 product = 1;
  for (std::size_t i = 0; i < kPrimes.size(); ++i) {
    product *= kPrimes[i].modulus;
    if (product > target) return i + 1;
  }
  throw std::overflow_error("coefficient bound exceeds the five-prime modulus; big-integer mode required");
}

namespace {

std::uint32_t residue(i128 v, std::uint32_t mod) {
  i128 r = v % static_cast<i128>(mod);
  if (r < 0) r += mod;
  return static_cast<std::uint32_t>(r);
}

}  // namespace

std::vector<i128> convolve_exact(std::span<const i128> a, std::span<const i128> b,
                                 std::size_t out_len, u128 bound, unsigned threads) {
  if (a.empty() || b.empty() || out_len == 0) return std::vector<i128>(out_len, 0);
  const std::size_t linear_len = a.size() + b.size() - 1;
  const std::size_t needed = std::min(out_len, linear_len);
  const std::size_t len = std::bit_ceil(linear_len);
  if (len > kMaxTransformLength)
    throw ResourceLimit("ntt: transform length " + std::to_string(len) + " exceeds 2^23");
  const std::size_t prime_count = primes_needed(bound);

  std::vector<std::vector<std::uint32_t>> residues(prime_count);
  parallel_for(prime_count, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t pi = begin; pi < end; ++pi) {
      const Prime& prime = kPrimes[pi];
      std::vector<std::uint32_t> fa(len, 0), fb(len, 0);
      for (std::size_t i = 0; i < a.size(); ++i) fa[i] = residue(a[i], prime.modulus);
      for (std::size_t i = 0; i < b.size(); ++i) fb[i] = residue(b[i], prime.modulus);
      transform(fa, prime, false);
      transform(fb, prime, false);
      for (std::size_t i = 0; i < len; ++i)
        fa[i] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(fa[i]) * fb[i] % prime.modulus);
      transform(fa, prime, true);
      const std::uint32_t shift = residue(static_cast<i128>(bound), prime.modulus);
      fa.resize(needed);
      for (auto& x : fa) {
        const std::uint64_t s = static_cast<std::uint64_t>(x) + shift;
        x = static_cast<std::uint32_t>(s % prime.modulus);
      }
      residues[pi] = std::move(fa);
    }
  });

  // inverse of p_j modulo p_i for j < i
  std::array<std::array<std::uint32_t, kPrimes.size()>, kPrimes.size()> inverse{};
  for (std::size_t i = 0; i < prime_count; ++i)
    for (std::size_t j = 0; j < i; ++j)
      inverse[i][j] = pow_mod(kPrimes[j].modulus % kPrimes[i].modulus, kPrimes[i].modulus - 2,
                              kPrimes[i].modulus);

  std::vector<i128> out(out_len, 0);
  for (std::size_t t = 0; t < needed; ++t) {
    std::array<std::uint64_t, kPrimes.size()> digits{};
    for (std::size_t i = 0; i < prime_count; ++i) {
      const std::uint64_t mod = kPrimes[i].modulus;
      std::uint64_t x = residues[i][t];
      for (std::size_t j = 0; j < i; ++j) {
        x = (x + mod - digits[j] % mod) % mod;
        x = x * inverse[i][j] % mod;
      }
      digits[i] = x;
    }
    u128 value = 0, radix = 1;
    for (std::size_t i = 0; i < prime_count; ++i) {
      value += radix * digits[i];
      radix *= kPrimes[i].modulus;
    }
    out[t] = static_cast<i128>(value) - static_cast<i128>(bound);
  }
  return out;
}

}  // namespace waring::ntt

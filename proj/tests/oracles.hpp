#pragma once

// Brute-force reference computations. Nothing here calls into the library's
// convolution, phase or digit code paths.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <vector>

namespace oracle {

inline int eps(std::uint64_t n) {
  int ones = 0;
  for (; n != 0; n /= 2) ones += static_cast<int>(n % 2);
  return ones % 2 == 0 ? 1 : -1;
}

inline std::uint64_t ipow(std::uint64_t x, unsigned n) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < n; ++i) r *= x;
  return r;
}

inline std::int64_t corr_S(std::uint64_t X, std::uint64_t h) {
  std::int64_t s = 0;
  for (std::uint64_t n = 1; n <= X; ++n) s += eps(n) * eps(n + h);
  return s;
}

inline std::int64_t corr_V(std::uint64_t X, std::uint64_t h) {
  std::int64_t s = 0;
  for (std::uint64_t n = 1; n <= X; ++n) s += eps(n) * (eps(n + h) + eps(n + h + 1));
  return s;
}

// Number of (x_1..x_s, y_1..y_s) in [1,P]^{2s} with equal sums of n-th
// powers: histogram of s-fold sums, then sum of squares.
inline std::int64_t moment_brute(std::uint64_t P, unsigned n, unsigned s) {
  std::map<std::uint64_t, std::int64_t> sums{{0, 1}};
  for (unsigned i = 0; i < s; ++i) {
    std::map<std::uint64_t, std::int64_t> next;
    for (const auto& [v, c] : sums)
      for (std::uint64_t x = 1; x <= P; ++x) next[v + ipow(x, n)] += c;
    sums = std::move(next);
  }
  std::int64_t total = 0;
  for (const auto& [v, c] : sums) total += c * c;
  return total;
}

// Literal nested loop over all 2s variables (small cases only).
inline std::int64_t moment_nested(std::uint64_t P, unsigned n, unsigned s) {
  std::vector<std::uint64_t> idx(2 * s, 1);
  std::int64_t count = 0;
  while (true) {
    std::uint64_t lhs = 0, rhs = 0;
    for (unsigned i = 0; i < s; ++i) {
      lhs += ipow(idx[i], n);
      rhs += ipow(idx[s + i], n);
    }
    if (lhs == rhs) ++count;
    unsigned pos = 0;
    while (pos < 2 * s && idx[pos] == P) idx[pos++] = 1;
    if (pos == 2 * s) break;
    ++idx[pos];
  }
  return count;
}

// Ordered k-tuples of positive integers with x_j^n summing to N and
// x_j restricted by cls[j] (0: even popcount, 1: odd, -1: any).
inline std::int64_t count_brute(std::uint64_t N, unsigned n, const std::vector<int>& cls) {
  std::int64_t count = 0;
  std::vector<std::uint64_t> x(cls.size(), 0);
  auto rec = [&](auto&& self, std::size_t pos, std::uint64_t remaining) -> void {
    if (pos == cls.size()) {
      if (remaining == 0) ++count;
      return;
    }
    for (std::uint64_t v = 1; ipow(v, n) <= remaining; ++v) {
      if (cls[pos] == 0 && eps(v) != 1) continue;
      if (cls[pos] == 1 && eps(v) != -1) continue;
      self(self, pos + 1, remaining - ipow(v, n));
    }
  };
  rec(rec, 0, N);
  return count;
}

// Sum at long-double precision with naive trig on the reduced phase.
inline std::complex<long double> weyl_long_double(long double alpha, std::uint64_t P, unsigned n,
                                                  bool with_eps) {
  std::complex<long double> acc = 0;
  for (std::uint64_t x = 1; x <= P; ++x) {
    const long double xn = static_cast<long double>(ipow(x, n));
    long double ph = alpha * xn;
    ph -= std::floor(ph);
    const long double angle = 2.0L * std::numbers::pi_v<long double> * ph;
    acc += std::complex<long double>(std::cos(angle), std::sin(angle)) *
           static_cast<long double>(with_eps ? eps(x) : 1);
  }
  return acc;
}

}  // namespace oracle

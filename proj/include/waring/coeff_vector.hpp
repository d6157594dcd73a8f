#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "waring/int128.hpp"

namespace waring {

enum class CoeffKind : std::uint8_t { Unsigned = 0, Signed = 1 };

struct CoeffMeta {
  std::uint64_t P = 0;
  unsigned n = 0;
  std::string label;  // "A", "E", "G0", "G1", or a derived description
};

/// coeffs[v] for 0 <= v <= cap: the generating-function view of a sum
/// over x of (weight) e(alpha x^n).
struct CoeffVector {
  std::vector<i128> coeffs;
  CoeffKind kind = CoeffKind::Unsigned;
  CoeffMeta meta;

  std::uint64_t cap() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  i128 at(std::uint64_t v) const { return v < coeffs.size() ? coeffs[v] : 0; }
  std::size_t nonzeros() const;
};

inline constexpr std::uint64_t kMaxCoefficients = std::uint64_t{1} << 26;

/// Throws ResourceLimit when a vector with cap + 1 entries would exceed
/// kMaxCoefficients.
void require_table_size(std::uint64_t cap, const std::string& what);

/// The vector with a single 1 at index 0.
CoeffVector delta(std::uint64_t cap);

/// Largest P with P^n <= N.
std::uint64_t root_floor(std::uint64_t N, unsigned n);

struct BaseVectors {
  CoeffVector A;   // #{x <= P : x^n = v}
  CoeffVector E;   // sum of eps(x) over those x
  CoeffVector G0;  // x in N0
  CoeffVector G1;  // x in N1
};

/// Only values v <= cap are kept.
BaseVectors build_base_vectors(std::uint64_t P, unsigned n, std::uint64_t cap);

enum class ConvolutionStrategy { Auto, Schoolbook, Ntt };

struct ConvolutionOptions {
  ConvolutionStrategy strategy = ConvolutionStrategy::Auto;
  unsigned threads = 1;
  std::filesystem::path cache_dir;  // empty: no base-vector cache
};

/// Exact product truncated at cap. Signed if either input is signed.
/// Throws std::overflow_error when the coefficient bound passes 2^125.
CoeffVector convolve(const CoeffVector& u, const CoeffVector& w, std::uint64_t cap,
                     const ConvolutionOptions& options = {});

/// build_base_vectors, going through cache_dir when one is set: A and E are
/// read from a cached file covering cap, or built and written there. G0 and
/// G1 are recovered as (A + E) / 2 and (A - E) / 2.
BaseVectors base_vectors(std::uint64_t P, unsigned n, std::uint64_t cap,
                         const ConvolutionOptions& options);

/// u^{*k}, truncated at cap; k = 0 gives delta(cap).
CoeffVector convolution_power(const CoeffVector& u, unsigned k, std::uint64_t cap,
                              const ConvolutionOptions& options = {});

/// Binary cache: "WDC1", u64 P, u32 n, u8 kind, u64 cap, then cap + 1
/// little-endian 16-byte two's-complement coefficients.
void write_cache(const std::filesystem::path& path, const CoeffVector& v);
CoeffVector read_cache(const std::filesystem::path& path);

}  // namespace waring

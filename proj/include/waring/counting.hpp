#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "waring/coeff_vector.hpp"
#include "waring/digitcore.hpp"
#include "waring/int128.hpp"

namespace waring {

/// Per-variable class restriction; std::nullopt means unrestricted.
using Pattern = std::optional<std::vector<DigitClass>>;

/// "0110" -> {Class0, Class1, Class1, Class0}; throws std::invalid_argument
/// unless the string has exactly k characters from {0, 1}.
std::vector<DigitClass> parse_pattern(std::string_view text, unsigned k);
std::string pattern_string(const Pattern& pattern);

struct RepCountResult {
  std::uint64_t N = 0;
  unsigned n = 0;
  unsigned k = 0;
  Pattern pattern;
  i128 count = 0;  // ordered tuples (x_1..x_k) of positive integers
};

/// Number of ordered solutions of x_1^n + ... + x_k^n = N with x_j in the
/// class pattern[j] (or any positive integer when unrestricted).
RepCountResult count_representations(std::uint64_t N, unsigned n, unsigned k,
                                     const Pattern& pattern,
                                     const ConvolutionOptions& options = {});

struct MomentReport {
  std::uint64_t P = 0;
  unsigned n = 0;
  unsigned w_exponent = 0;  // 2l: power of |W|
  unsigned s_exponent = 0;  // 2m (or 2s): power of |S|
  i128 value = 0;
  double reference_bound = 0;
  std::string bound_kind;  // "hua", "mean-value-shape" or "dominating-moment"
};

/// Integral of |S|^{2s}: the number of solutions of
/// x_1^n + ... + x_s^n = y_1^n + ... + y_s^n with all variables <= P.
MomentReport moment_S(std::uint64_t P, unsigned n, unsigned s,
                      const ConvolutionOptions& options = {});

/// Integral of |W|^{2l} |S|^{2m} = sum_u C[u]^2 with C = E^{*l} * A^{*m}.
MomentReport mixed_moment(std::uint64_t P, unsigned n, unsigned l, unsigned m,
                          const ConvolutionOptions& options = {});

struct DominationCheck {
  std::uint64_t P = 0;
  unsigned n = 0, l = 0, m = 0;
  i128 mixed = 0;  // sum C^2
  i128 pure = 0;   // sum D^2, D = A^{*(l+m)}
  bool pointwise = false;  // |C[u]| <= D[u] for every u
  bool summed = false;     // mixed <= pure
  std::optional<std::uint64_t> first_violation;
};

DominationCheck domination_check(std::uint64_t P, unsigned n, unsigned l, unsigned m,
                                 const ConvolutionOptions& options = {});

/// 2^n for 3 <= n <= 10, 2 floor(n^2 (ln n + ln ln n + 4)) for n > 10, and
/// nothing for n < 3.
std::optional<std::uint64_t> k0_threshold(unsigned n);

struct RatioRow {
  std::uint64_t N = 0;
  i128 I = 0;
  i128 J = 0;
  std::optional<double> ratio;  // I 2^k / J when J > 0
};

struct RatioReport {
  unsigned n = 0;
  unsigned k = 0;
  std::uint64_t from = 0, to = 0;
  std::uint64_t P = 0;
  std::optional<std::uint64_t> k0;
  bool k_at_least_k0 = false;
  std::vector<RatioRow> rows;
  std::size_t ratio_count = 0;
  double mean = 0;
  double stddev = 0;  // population standard deviation of the ratios
};

/// Exact I and J for every N in [from, to]. Throws std::invalid_argument for
/// an empty window or k < 2.
RatioReport theorem_ratio_report(unsigned n, unsigned k, std::uint64_t from, std::uint64_t to,
                                 const ConvolutionOptions& options = {});

/// Sum of count_representations over all 2^k patterns equals J. k <= 12.
bool pattern_partition_check(std::uint64_t N, unsigned n, unsigned k,
                             const ConvolutionOptions& options = {});

struct DftCheck {
  std::uint64_t samples = 0;
  i128 convolution = 0;
  double integral_re = 0;
  double integral_im = 0;
  i128 rounded = 0;
  double residual = 0;  // distance of the integral from the rounded integer
  bool agrees = false;  // rounded == convolution and residual < 0.01
};

/// Evaluates the integral over [0,1) of prod_j F_j(alpha) e(-alpha N), with
/// F = (S+W)/2, (S-W)/2 or S per slot, by M-point uniform sampling. The
/// default M = kN + 1 exceeds the polynomial degree; a smaller M is rejected.
DftCheck dft_cross_check(std::uint64_t N, unsigned n, unsigned k, const Pattern& pattern,
                         std::optional<std::uint64_t> samples = std::nullopt);

}  // namespace waring

#pragma once

// Desk-scale verification checks shared by `verify` and the acceptance
// runner. Every check is deterministic given its arguments.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace waring::checks {

struct CheckResult {
  CheckResult() = default;
  CheckResult(std::string check_name, std::string check_scope)
      : name(std::move(check_name)), scope(std::move(check_scope)) {}

  std::string name;
  std::string scope;  // parameter range in words
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::string detail;        // first failure, or the measured quantity
  bool must = true;          // false: reported observation, never fails a run
  bool pass() const { return failures == 0; }
};

/// Uniform-enough integer in [lo, hi] from a 64-bit engine; the library
/// distributions are implementation-defined, this is not.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi);
/// Double in [0, 1) with 53 random bits.
double draw_unit(std::mt19937_64& rng);

CheckResult identity_suite(unsigned t_max);
CheckResult gauss_orthogonality(std::uint64_t q_max, unsigned n_lo, unsigned n_hi,
                                unsigned a_per_q, std::mt19937_64& rng, double rel_tol);
CheckResult progression_identity(unsigned K_max, std::uint64_t y_max, unsigned threads);
CheckResult recursion_residuals(const std::vector<std::uint64_t>& xs, unsigned h_per_x,
                                std::mt19937_64& rng);
CheckResult coefficient_bounds(std::uint64_t h_max);
CheckResult moment_oracle(std::uint64_t P_max, const std::vector<unsigned>& ns, unsigned s_max,
                          unsigned threads);
CheckResult domination(std::uint64_t P_max, unsigned n, unsigned lm_max, unsigned threads);
CheckResult partition_checks(unsigned instances, std::uint64_t N_max, unsigned k_max,
                             std::mt19937_64& rng, unsigned threads);
CheckResult dft_bridge(unsigned instances, std::uint64_t N_max, unsigned k_max,
                       std::mt19937_64& rng);

struct SlopeResult {
  CheckResult check;
  double slope = 0;
  std::vector<std::uint64_t> H;
  std::vector<std::uint64_t> totals;
};
SlopeResult correlation_slope(std::uint64_t X, std::uint64_t H_lo, std::uint64_t H_hi,
                              double margin, unsigned threads);

CheckResult dirichlet_approximations(unsigned samples, std::mt19937_64& rng);
CheckResult van_der_corput(unsigned samples, std::uint64_t P_max, std::mt19937_64& rng);
/// Observation: max |W|/P over Farey points with q <= q_max.
CheckResult farey_scan(std::uint64_t P, unsigned n, std::uint64_t q_max, unsigned threads);

struct WindowResult {
  std::uint64_t from = 0, to = 0;
  double mean = 0;
  double stddev = 0;
  std::size_t ratios = 0;
};
WindowResult ratio_window(unsigned n, unsigned k, std::uint64_t from, std::uint64_t to,
                          unsigned threads);
/// Observation: window mean of I 2^k / J.
CheckResult ratio_observation(const WindowResult& w, unsigned n, unsigned k);

}  // namespace waring::checks

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "waring/int128.hpp"
#include "waring/rational.hpp"

namespace waring {

/// Exponent in sum_{h<=H} |S(X,h)| = O(X H^mu).
inline const double kCorrelationMu = std::log(3.5) / std::log(4.0);

struct CorrelationValue {
  std::int64_t s = 0;  // sum_{1<=n<=X} eps(n) eps(n+h)
  std::int64_t v = 0;  // sum_{1<=n<=X} eps(n) (eps(n+h) + eps(n+h+1))
  std::uint64_t x = 0;
  std::uint64_t h = 0;
  bool outside_regime = false;  // h > X/4
};

/// S(X,h) and V(X,h) by direct enumeration over 1 <= n <= X. h = 0 is
/// allowed (S = X). Throws std::invalid_argument for X = 0.
CorrelationValue corr_direct(std::uint64_t X, std::uint64_t h);

/// Both sides of the even/odd split of level j, evaluated by enumeration.
struct RecursionResidual {
  unsigned j = 0;
  std::uint64_t x_level = 0;  // floor(X / 2^j)
  std::uint64_t h_level = 0;  // h_j = floor(h / 2^j)
  int s = 1;                  // s_j = 1 - 2 * (bit j of h)
  std::int64_t s_lhs = 0, s_rhs = 0;
  std::int64_t v_lhs = 0, v_rhs = 0;
  std::int64_t theta = 0;        // s_lhs - s_rhs
  std::int64_t theta_prime = 0;  // v_lhs - v_rhs
  bool within_contract = false;  // |theta| <= 1 and |theta'| <= 1
};

/// Requires j < bit_width(h) and floor(X / 2^(j+1)) >= 1.
RecursionResidual recursion_step_check(std::uint64_t X, std::uint64_t h, unsigned j);

enum class TraceInit {
  Consistent,  // alpha_0 = 1, beta_0 = 0 so that S(X,h) = alpha_0 S(X,h_0)
  AsPrinted,   // alpha_0 = beta_0 = 1
};

struct TraceLevel {
  unsigned j = 0;
  std::uint64_t h = 0;  // h_j
  int s = 1;            // s_j
  i128 alpha = 0;
  Rational beta;
  // S(X,h) - (alpha_j S(X/2^j, h_j) + beta_j V(X/2^j, h_j)); NaN when no X
  // was supplied or X/2^j < 1.
  double theta_residual = std::nan("");
};

struct CorrelationTrace {
  std::uint64_t h = 0;
  unsigned top = 0;  // k with 2^k <= h < 2^(k+1)
  TraceInit init = TraceInit::Consistent;
  std::vector<TraceLevel> levels;  // j = 0..top

  std::uint32_t kappa12_h1 = 0;  // kappa12(floor(h/2))
  Rational alpha_top_bound;      // (3/4)^kappa12 * (4/3) * 2^top
  Rational beta_top_bound;       // (3/4)^kappa12 * 2^(top+1)

  bool alpha_power_bound = false;  // |alpha_j| <= 2^j for every j
  bool second_order_holds = false; // alpha_{j+2} - alpha_{j+1} = 2 s_j s_{j+1} alpha_j
  bool beta_from_alpha_holds = false;  // 2 s_j beta_j = alpha_{j+1} - (1+s_j) alpha_j
  bool beta_shift_holds = false;       // beta_{j+1} = -alpha_{j+1}/2 + s_j alpha_j
  bool alpha_kappa_bound = false;  // |alpha_top| <= alpha_top_bound
  bool beta_kappa_bound = false;   // |beta_top| <= beta_top_bound
};

/// Runs the alpha/beta recursion for shift h >= 1 and checks every
/// derived relation exactly. With X given, also records the telescoped
/// residual at each level where X/2^j >= 1.
CorrelationTrace coefficient_trace(std::uint64_t h, TraceInit init = TraceInit::Consistent);
CorrelationTrace coefficient_trace(std::uint64_t h, std::uint64_t X,
                                   TraceInit init = TraceInit::Consistent);

struct AuditRow {
  std::uint64_t h = 0;
  std::int64_t s = 0;
  std::int64_t v = 0;
  std::uint32_t kappa12_h1 = 0;
  double alpha_bound = 0;  // (3/4)^kappa12(h1) * (4/3) * 2^k
};

struct BoundAudit {
  std::uint64_t x = 0;
  std::uint64_t big_h = 0;
  i128 total = 0;    // sum_{h<=H} |S(X,h)|
  double mu = kCorrelationMu;
  double ratio = 0;  // total / (X H^mu)
  bool outside_regime = false;  // H > X/4
  std::vector<AuditRow> rows;
};

BoundAudit bound_audit(std::uint64_t X, std::uint64_t H, unsigned threads = 1);

/// Least-squares slope of log(y) against log(x).
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace waring

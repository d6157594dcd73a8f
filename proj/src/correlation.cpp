#include "waring/correlation.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

#include "waring/digitcore.hpp"
#include "waring/parallel.hpp"

namespace waring {

namespace {

struct SumPair {
  std::int64_t s = 0;
  std::int64_t v = 0;
};

// Sums over 1 <= n <= limit; limit = 0 gives empty sums.
SumPair sum_pair(std::uint64_t limit, std::uint64_t h) {
  SumPair out;
  for (std::uint64_t n = 1; n <= limit; ++n) {
    const int e = epsilon_value(n);
    const int a = epsilon_value(n + h);
    const int b = epsilon_value(n + h + 1);
    out.s += e * a;
    out.v += e * (a + b);
  }
  return out;
}

}  // namespace

CorrelationValue corr_direct(std::uint64_t X, std::uint64_t h) {
  if (X == 0) throw std::invalid_argument("corr_direct: X must be >= 1");
  const auto sums = sum_pair(X, h);
  return {sums.s, sums.v, X, h, h > X / 4};
}

RecursionResidual recursion_step_check(std::uint64_t X, std::uint64_t h, unsigned j) {
  if (h == 0) throw std::invalid_argument("recursion_step_check: h must be >= 1");
  if (j >= static_cast<unsigned>(std::bit_width(h)))
    throw std::out_of_range("recursion_step_check: j must be below the bit length of h");
  if (j + 1 >= 64 || (X >> (j + 1)) == 0)
    throw std::out_of_range("recursion_step_check: need X / 2^(j+1) >= 1");

  RecursionResidual r;
  r.j = j;
  r.x_level = X >> j;
  r.h_level = h >> j;
  r.s = 1 - 2 * static_cast<int>(r.h_level & 1U);

  const auto upper = sum_pair(r.x_level, r.h_level);
  const auto lower = sum_pair(X >> (j + 1), r.h_level >> 1);
  const std::int64_t s = r.s;

  r.s_lhs = upper.s;
  r.s_rhs = (1 + s) * lower.s + ((s - 1) / 2) * lower.v;
  r.v_lhs = upper.v;
  r.v_rhs = 2 * s * lower.s - s * lower.v;
  r.theta = r.s_lhs - r.s_rhs;
  r.theta_prime = r.v_lhs - r.v_rhs;
  r.within_contract = std::abs(r.theta) <= 1 && std::abs(r.theta_prime) <= 1;
  return r;
}

CorrelationTrace coefficient_trace(std::uint64_t h, TraceInit init) {
  if (h == 0) throw std::invalid_argument("coefficient_trace: h must be >= 1");

  CorrelationTrace trace;
  trace.h = h;
  trace.init = init;
  trace.top = static_cast<unsigned>(std::bit_width(h)) - 1;

  const unsigned k = trace.top;
  trace.levels.resize(k + 1);
  for (unsigned j = 0; j <= k; ++j) {
    auto& level = trace.levels[j];
    level.j = j;
    level.h = h >> j;
    level.s = 1 - 2 * static_cast<int>((h >> j) & 1U);
  }

  trace.levels[0].alpha = 1;
  trace.levels[0].beta = init == TraceInit::Consistent ? Rational(0) : Rational(1);
  for (unsigned j = 0; j < k; ++j) {
    const auto& cur = trace.levels[j];
    auto& next = trace.levels[j + 1];
    const i128 s = cur.s;
    // alpha_{j+1} = (1+s) alpha_j + 2 s beta_j
    const Rational alpha_next = Rational((1 + s) * cur.alpha) + Rational(2 * s) * cur.beta;
    if (alpha_next.den() != 1)
      throw std::logic_error("coefficient_trace: non-integral alpha");
    next.alpha = alpha_next.num();
    // beta_{j+1} = ((s-1)/2) alpha_j - s beta_j
    next.beta = Rational((s - 1) * cur.alpha, 2) - Rational(s) * cur.beta;
  }

  const auto& lv = trace.levels;
  trace.alpha_power_bound = true;
  for (unsigned j = 0; j <= k; ++j)
    if (abs128(lv[j].alpha) > (static_cast<i128>(1) << j)) trace.alpha_power_bound = false;

  trace.second_order_holds = true;
  for (unsigned j = 0; j + 2 <= k; ++j) {
    const i128 lhs = lv[j + 2].alpha - lv[j + 1].alpha;
    const i128 rhs = 2 * static_cast<i128>(lv[j].s) * lv[j + 1].s * lv[j].alpha;
    if (lhs != rhs) trace.second_order_holds = false;
  }

  trace.beta_from_alpha_holds = true;
  trace.beta_shift_holds = true;
  for (unsigned j = 0; j < k; ++j) {
    const i128 s = lv[j].s;
    if (Rational(2 * s) * lv[j].beta != Rational(lv[j + 1].alpha - (1 + s) * lv[j].alpha))
      trace.beta_from_alpha_holds = false;
    if (lv[j + 1].beta != Rational(-lv[j + 1].alpha, 2) + Rational(s * lv[j].alpha))
      trace.beta_shift_holds = false;
  }

  trace.kappa12_h1 = kappa12_count(h >> 1);
  const Rational shrink = pow(Rational(3, 4), trace.kappa12_h1);
  const Rational top_power(static_cast<i128>(1) << k);
  trace.alpha_top_bound = shrink * Rational(4, 3) * top_power;
  trace.beta_top_bound = shrink * Rational(2) * top_power;
  trace.alpha_kappa_bound = Rational(abs128(lv[k].alpha)) <= trace.alpha_top_bound;
  trace.beta_kappa_bound = lv[k].beta.abs() <= trace.beta_top_bound;
  return trace;
}

CorrelationTrace coefficient_trace(std::uint64_t h, std::uint64_t X, TraceInit init) {
  if (X == 0) throw std::invalid_argument("coefficient_trace: X must be >= 1");
  auto trace = coefficient_trace(h, init);
  const auto whole = sum_pair(X, h);
  for (auto& level : trace.levels) {
    if (level.j >= 64 || (X >> level.j) == 0) break;
    const auto part = sum_pair(X >> level.j, level.h);
    const Rational approx = Rational(level.alpha) * Rational(part.s) + level.beta * Rational(part.v);
    level.theta_residual = (Rational(whole.s) - approx).to_double();
  }
  return trace;
}

BoundAudit bound_audit(std::uint64_t X, std::uint64_t H, unsigned threads) {
  if (X == 0 || H == 0) throw std::invalid_argument("bound_audit: X and H must be >= 1");

  // eps(n) for 0 <= n <= X + H + 1
  std::vector<std::int8_t> signs(X + H + 2);
  for (std::uint64_t n = 0; n < signs.size(); ++n)
    signs[n] = static_cast<std::int8_t>(epsilon_value(n));

  BoundAudit audit;
  audit.x = X;
  audit.big_h = H;
  audit.outside_regime = H > X / 4;
  audit.rows.resize(H);

  parallel_for(H, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const std::uint64_t h = idx + 1;
      std::int64_t s = 0, v = 0;
      for (std::uint64_t n = 1; n <= X; ++n) {
        const int e = signs[n];
        s += e * signs[n + h];
        v += e * (signs[n + h] + signs[n + h + 1]);
      }
      auto& row = audit.rows[idx];
      row.h = h;
      row.s = s;
      row.v = v;
      row.kappa12_h1 = kappa12_count(h >> 1);
      const int k = std::bit_width(h) - 1;
      row.alpha_bound = std::pow(0.75, row.kappa12_h1) * (4.0 / 3.0) * std::ldexp(1.0, k);
    }
  });

  for (const auto& row : audit.rows) audit.total += row.s < 0 ? -row.s : row.s;
  audit.ratio = static_cast<double>(audit.total) /
                (static_cast<double>(X) * std::pow(static_cast<double>(H), audit.mu));
  return audit;
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_loglog_slope: need at least two paired points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0 || y[i] <= 0)
      throw std::domain_error("fit_loglog_slope: points must be positive");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0) throw std::domain_error("fit_loglog_slope: degenerate x values");
  return (n * sxy - sx * sy) / denom;
}

}  // namespace waring

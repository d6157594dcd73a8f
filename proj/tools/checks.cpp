#include "checks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "waring/correlation.hpp"
#include "waring/counting.hpp"
#include "waring/digitcore.hpp"
#include "waring/expsums.hpp"
#include "waring/parallel.hpp"
#include "waring/rational.hpp"
#include "waring/report.hpp"

namespace waring::checks {

namespace {

// Per-case slot: empty when the case passed, otherwise a description.
using Slot = std::optional<std::string>;

void absorb(CheckResult& r, const std::vector<Slot>& slots) {
  r.cases += slots.size();
  for (const auto& s : slots) {
    if (!s) continue;
    if (r.failures == 0) r.detail = *s;
    ++r.failures;
  }
}

std::string u(std::uint64_t v) { return std::to_string(v); }

std::uint64_t ipow(std::uint64_t x, unsigned n) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < n; ++i) r *= x;
  return r;
}

// Solutions of x_1^n + .. + x_s^n = y_1^n + .. + y_s^n in [1,P], by an
// explicit histogram of s-fold sums.
std::int64_t moment_by_histogram(std::uint64_t P, unsigned n, unsigned s) {
  std::vector<std::int64_t> hist{1};
  for (unsigned i = 0; i < s; ++i) {
    std::vector<std::int64_t> next(hist.size() + ipow(P, n), 0);
    for (std::size_t v = 0; v < hist.size(); ++v) {
      if (hist[v] == 0) continue;
      for (std::uint64_t x = 1; x <= P; ++x) next[v + ipow(x, n)] += hist[v];
    }
    hist = std::move(next);
  }
  std::int64_t total = 0;
  for (auto c : hist) total += c * c;
  return total;
}

struct Instance {
  std::uint64_t N;
  unsigned n;
  unsigned k;
  Pattern pattern;
};

Instance draw_instance(std::mt19937_64& rng, std::uint64_t N_max, unsigned k_max) {
  Instance in;
  in.N = draw(rng, 1, N_max);
  in.n = static_cast<unsigned>(draw(rng, 3, 4));
  in.k = static_cast<unsigned>(draw(rng, 1, k_max));
  if (draw(rng, 0, 3) != 0) {
    std::vector<DigitClass> slots;
    for (unsigned j = 0; j < in.k; ++j)
      slots.push_back(draw(rng, 0, 1) == 0 ? DigitClass::Class0 : DigitClass::Class1);
    in.pattern = slots;
  }
  return in;
}

std::string describe(const Instance& in) {
  return "N=" + u(in.N) + " n=" + u(in.n) + " k=" + u(in.k) + " pattern=" + pattern_string(in.pattern);
}

}  // namespace

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo + 1;
  return span == 0 ? rng() : lo + rng() % span;
}

double draw_unit(std::mt19937_64& rng) { return std::ldexp(static_cast<double>(rng() >> 11), -53); }

CheckResult identity_suite(unsigned t_max) {
  CheckResult r{"identity_sum", "t=1.." + u(t_max) + ", exact (7/2)^t"};
  std::vector<Slot> slots;
  for (unsigned t = 1; t <= t_max; ++t) {
    const auto got = identity_sum(t);
    const auto want = pow(Rational(7, 2), t);
    slots.push_back(got == want ? Slot{}
                                : Slot{"t=" + u(t) + " sum=" + got.to_string() + " expected=" + want.to_string()});
  }
  absorb(r, slots);
  if (r.pass()) r.detail = "t=" + u(t_max) + " sum=" + identity_sum(t_max).to_string();
  return r;
}

CheckResult gauss_orthogonality(std::uint64_t q_max, unsigned n_lo, unsigned n_hi,
                                unsigned a_per_q, std::mt19937_64& rng, double rel_tol) {
  CheckResult r{"gauss_second_moment",
                "q<=" + u(q_max) + ", n=" + u(n_lo) + ".." + u(n_hi) + ", " + u(a_per_q) +
                    " coprime a per q, tol " + format_real(rel_tol) + "*q"};
  std::vector<Slot> slots;
  double worst = 0;
  for (std::uint64_t q = 1; q <= q_max; ++q) {
    std::vector<std::int64_t> units;
    for (std::uint64_t a = 0; a < q; ++a)
      if (std::gcd(a, q) == 1) units.push_back(static_cast<std::int64_t>(a));
    for (std::size_t i = 0; i < units.size() && i < a_per_q; ++i)
      std::swap(units[i], units[draw(rng, i, units.size() - 1)]);
    units.resize(std::min<std::size_t>(units.size(), a_per_q));
    for (auto a : units)
      for (unsigned n = n_lo; n <= n_hi; ++n) {
        const double m = gauss_second_moment(a, q, n);
        const double err = std::abs(m - static_cast<double>(q)) / static_cast<double>(q);
        worst = std::max(worst, err);
        slots.push_back(err <= rel_tol ? Slot{}
                                       : Slot{"a=" + std::to_string(a) + " q=" + u(q) + " n=" + u(n) +
                                              " moment=" + format_real(m)});
      }
  }
  absorb(r, slots);
  if (r.pass()) r.detail = "max relative error " + format_real(worst);
  return r;
}

CheckResult progression_identity(unsigned K_max, std::uint64_t y_max, unsigned threads) {
  CheckResult r{"progression_identity", "K=1.." + u(K_max) + ", all 1<=h<2^K, y<=" + u(y_max)};
  for (unsigned K = 1; K <= K_max; ++K) {
    const std::uint64_t block = std::uint64_t{1} << K;
    std::vector<Slot> slots(block - 1);
    parallel_for(slots.size(), threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        const std::uint64_t h = i + 1;
        if (!progression_identity_check(K, h, y_max)) slots[i] = "K=" + u(K) + " h=" + u(h);
      }
    });
    absorb(r, slots);
  }
  return r;
}

CheckResult recursion_residuals(const std::vector<std::uint64_t>& xs, unsigned h_per_x,
                                std::mt19937_64& rng) {
  std::string scope = "X in {";
  for (std::size_t i = 0; i < xs.size(); ++i) scope += (i ? "," : "") + u(xs[i]);
  scope += "}, " + u(h_per_x) + " random h<=X/4 each, all levels j, |theta|<=1 and |theta'|<=1";
  CheckResult r{"recursion_residuals", scope};
  std::vector<Slot> slots;
  std::int64_t worst = 0;
  for (auto X : xs) {
    for (unsigned i = 0; i < h_per_x; ++i) {
      const std::uint64_t h = draw(rng, 1, std::max<std::uint64_t>(1, X / 4));
      const unsigned levels = static_cast<unsigned>(std::bit_width(h));
      for (unsigned j = 0; j < levels && (X >> (j + 1)) >= 1; ++j) {
        const auto res = recursion_step_check(X, h, j);
        worst = std::max({worst, std::abs(res.theta), std::abs(res.theta_prime)});
        slots.push_back(res.within_contract
                            ? Slot{}
                            : Slot{"X=" + u(X) + " h=" + u(h) + " j=" + u(j) + " theta=" +
                                   std::to_string(res.theta) + " theta'=" + std::to_string(res.theta_prime)});
      }
    }
  }
  absorb(r, slots);
  if (r.pass()) r.detail = "max |residual| " + std::to_string(worst);
  return r;
}

CheckResult coefficient_bounds(std::uint64_t h_max) {
  CheckResult r{"coefficient_bounds",
                "h=1.." + u(h_max) + ", |alpha_j|<=2^j, kappa bounds, alpha/beta recursions"};
  std::vector<Slot> slots;
  for (std::uint64_t h = 1; h <= h_max; ++h) {
    const auto t = coefficient_trace(h);
    const bool ok = t.alpha_power_bound && t.alpha_kappa_bound && t.beta_kappa_bound &&
                    t.second_order_holds && t.beta_from_alpha_holds && t.beta_shift_holds;
    slots.push_back(ok ? Slot{} : Slot{"h=" + u(h)});
  }
  absorb(r, slots);
  return r;
}

CheckResult moment_oracle(std::uint64_t P_max, const std::vector<unsigned>& ns, unsigned s_max,
                          unsigned threads) {
  std::string scope = "P<=" + u(P_max) + ", n in {";
  for (std::size_t i = 0; i < ns.size(); ++i) scope += (i ? "," : "") + u(ns[i]);
  scope += "}, s<=" + u(s_max) + ", exact against histogram enumeration";
  CheckResult r{"moment_oracle", scope};
  struct Case {
    std::uint64_t P;
    unsigned n, s;
  };
  std::vector<Case> cases;
  for (std::uint64_t P = 1; P <= P_max; ++P)
    for (auto n : ns)
      for (unsigned s = 1; s <= s_max; ++s) cases.push_back({P, n, s});
  std::vector<Slot> slots(cases.size());
  parallel_for(cases.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto& c = cases[i];
      const auto got = moment_S(c.P, c.n, c.s).value;
      const auto want = moment_by_histogram(c.P, c.n, c.s);
      if (got != want)
        slots[i] = "P=" + u(c.P) + " n=" + u(c.n) + " s=" + u(c.s) + " got=" + to_string(got) +
                   " expected=" + std::to_string(want);
    }
  });
  absorb(r, slots);
  if (r.pass())
    r.detail = "moment_S(8,3,2)=" + to_string(moment_S(8, 3, 2).value) +
               " moment_S(12,3,2)=" + to_string(moment_S(12, 3, 2).value);
  return r;
}

CheckResult domination(std::uint64_t P_max, unsigned n, unsigned lm_max, unsigned threads) {
  CheckResult r{"mixed_moment_domination",
                "P<=" + u(P_max) + ", n=" + u(n) + ", 1<=l+m<=" + u(lm_max) +
                    ", pointwise |C[u]|<=D[u] and summed"};
  struct Case {
    std::uint64_t P;
    unsigned l, m;
  };
  std::vector<Case> cases;
  // Largest P first so static chunks carry comparable work.
  for (std::uint64_t P = P_max; P >= 1; --P)
    for (unsigned l = 0; l <= lm_max; ++l)
      for (unsigned m = 0; l + m <= lm_max; ++m)
        if (l + m > 0) cases.push_back({P, l, m});
  std::vector<Slot> slots(cases.size());
  parallel_for(cases.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto& c = cases[i];
      const auto d = domination_check(c.P, n, c.l, c.m);
      if (!d.pointwise || !d.summed)
        slots[i] = "P=" + u(c.P) + " l=" + u(c.l) + " m=" + u(c.m) + " mixed=" + to_string(d.mixed) +
                   " pure=" + to_string(d.pure) +
                   (d.first_violation ? " first u=" + u(*d.first_violation) : "");
    }
  });
  absorb(r, slots);
  return r;
}

CheckResult partition_checks(unsigned instances, std::uint64_t N_max, unsigned k_max,
                             std::mt19937_64& rng, unsigned threads) {
  CheckResult r{"pattern_partition",
                u(instances) + " random instances, N<=" + u(N_max) + ", n in {3,4}, k<=" + u(k_max)};
  std::vector<Instance> cases;
  for (unsigned i = 0; i < instances; ++i) cases.push_back(draw_instance(rng, N_max, k_max));
  std::vector<Slot> slots(cases.size());
  parallel_for(cases.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      if (!pattern_partition_check(cases[i].N, cases[i].n, cases[i].k)) slots[i] = describe(cases[i]);
  });
  absorb(r, slots);
  return r;
}

CheckResult dft_bridge(unsigned instances, std::uint64_t N_max, unsigned k_max, std::mt19937_64& rng) {
  CheckResult r{"dft_bridge", u(instances) + " random instances, N<=" + u(N_max) +
                                  ", n in {3,4}, k<=" + u(k_max) + ", M=kN+1, residual<0.01"};
  std::vector<Slot> slots;
  double worst = 0;
  for (unsigned i = 0; i < instances; ++i) {
    const auto in = draw_instance(rng, N_max, k_max);
    const auto d = dft_cross_check(in.N, in.n, in.k, in.pattern);
    worst = std::max(worst, d.residual);
    slots.push_back(d.agrees ? Slot{}
                             : Slot{describe(in) + " convolution=" + to_string(d.convolution) +
                                    " integral=" + format_real(d.integral_re)});
  }
  absorb(r, slots);
  if (r.pass()) r.detail = "max residual " + format_real(worst);
  return r;
}

SlopeResult correlation_slope(std::uint64_t X, std::uint64_t H_lo, std::uint64_t H_hi, double margin,
                              unsigned threads) {
  SlopeResult out;
  out.check = {"correlation_slope", "X=" + u(X) + ", H=" + u(H_lo) + ".." + u(H_hi) +
                                        " doubling, slope<=mu+" + format_real(margin)};
  const auto audit = bound_audit(X, H_hi, threads);
  std::vector<double> xs, ys;
  i128 running = 0;
  std::uint64_t next = H_lo;
  for (const auto& row : audit.rows) {
    running += row.s < 0 ? -row.s : row.s;
    if (row.h == next) {
      out.H.push_back(next);
      out.totals.push_back(static_cast<std::uint64_t>(running));
      xs.push_back(static_cast<double>(next));
      ys.push_back(static_cast<double>(running));
      next *= 2;
    }
  }
  out.slope = fit_loglog_slope(xs, ys);
  out.check.cases = 1;
  out.check.failures = out.slope <= kCorrelationMu + margin ? 0 : 1;
  out.check.detail = "slope " + format_real(out.slope) + ", mu " + format_real(kCorrelationMu);
  return out;
}

CheckResult dirichlet_approximations(unsigned samples, std::mt19937_64& rng) {
  CheckResult r{"dirichlet_approximation",
                u(samples) + " random alpha in [-4,4), tau in [1,1e6], 1<=q<=tau and |q alpha-a|<=1/tau"};
  std::vector<Slot> slots;
  for (unsigned i = 0; i < samples; ++i) {
    const double alpha = 8.0 * draw_unit(rng) - 4.0;
    const double tau = 1.0 + draw_unit(rng) * 999999.0;
    const auto approx = rational_approx(alpha, tau);
    slots.push_back(dirichlet_conditions_hold(alpha, approx)
                        ? Slot{}
                        : Slot{"alpha=" + format_real(alpha) + " tau=" + format_real(tau)});
  }
  absorb(r, slots);
  return r;
}

CheckResult van_der_corput(unsigned samples, std::uint64_t P_max, std::mt19937_64& rng) {
  CheckResult r{"van_der_corput", u(samples) + " random (alpha, P<=" + u(P_max) +
                                      ", H<=P/4, n in {2,3,4}), |W|^2 <= explicit right side"};
  std::vector<Slot> slots;
  double min_slack = INFINITY;
  for (unsigned i = 0; i < samples; ++i) {
    const double alpha = draw_unit(rng);
    const std::uint64_t P = draw(rng, 8, P_max);
    const std::uint64_t H = draw(rng, 1, P / 4);
    const auto n = static_cast<unsigned>(draw(rng, 2, 4));
    const auto row = van_der_corput_probe(alpha, P, n, H);
    min_slack = std::min(min_slack, row.slack / row.rhs);
    slots.push_back(row.holds ? Slot{}
                              : Slot{"alpha=" + format_real(alpha) + " P=" + u(P) + " n=" + u(n) +
                                     " H=" + u(H)});
  }
  absorb(r, slots);
  if (r.pass()) r.detail = "min relative slack " + format_real(min_slack);
  return r;
}

CheckResult farey_scan(std::uint64_t P, unsigned n, std::uint64_t q_max, unsigned threads) {
  CheckResult r{"farey_sup_scan", "P=" + u(P) + ", n=" + u(n) + ", q<=" + u(q_max)};
  r.must = false;
  const auto scan = sup_scan(P, n, q_max, threads);
  const auto& best = scan.rows[scan.argmax];
  r.cases = scan.rows.size();
  r.detail = "max |W|/P " + format_real(scan.max_ratio) + " at " + u(best.a) + "/" + u(best.q) +
             ", exponent " + format_real(scan.exponent);
  return r;
}

WindowResult ratio_window(unsigned n, unsigned k, std::uint64_t from, std::uint64_t to,
                          unsigned threads) {
  const auto report = theorem_ratio_report(n, k, from, to, {ConvolutionStrategy::Auto, threads, {}});
  return {from, to, report.mean, report.stddev, report.ratio_count};
}

CheckResult ratio_observation(const WindowResult& w, unsigned n, unsigned k) {
  CheckResult r{"theorem_ratio_window",
                "n=" + u(n) + ", k=" + u(k) + ", N in [" + u(w.from) + "," + u(w.to) + "]"};
  r.must = false;
  r.cases = w.ratios;
  r.detail = "mean I*2^k/J " + format_real(w.mean) + ", stddev " + format_real(w.stddev);
  return r;
}

}  // namespace waring::checks

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "waring/int128.hpp"

namespace waring {

struct ComplexSumValue {
  double re = 0;
  double im = 0;
  std::uint64_t terms = 0;
  double err_bound = 0;  // absolute rounding bound on (re, im)

  std::complex<double> value() const { return {re, im}; }
  double modulus() const { return std::abs(value()); }
};

/// S(alpha) = sum_{1<=x<=P} e(alpha x^n). Requires P >= 1, n >= 1 and
/// P^n < 2^127 (std::overflow_error names the (P, n) limit otherwise).
ComplexSumValue weyl_sum_S(double alpha, std::uint64_t P, unsigned n);

/// W(alpha) = sum_{1<=x<=P} eps(x) e(alpha x^n).
ComplexSumValue weyl_sum_W(double alpha, std::uint64_t P, unsigned n);

/// W(z, b) = sum_{1<=x<=P} eps(x) e(z x^n - b x / q), 0 <= b < q.
ComplexSumValue weyl_sum_W_twisted(double z, std::uint64_t b, std::uint64_t q,
                                   std::uint64_t P, unsigned n);

/// S or W at a rational point a/q, with the phase a x^n mod q formed in
/// integers.
ComplexSumValue weyl_sum_at_rational(std::uint64_t a, std::uint64_t q, std::uint64_t P,
                                     unsigned n, bool signed_by_epsilon);

/// sum_{l=0}^{q-1} e((a l^n + b l) / q). Throws std::invalid_argument when
/// gcd(a, q) != 1.
ComplexSumValue gauss_sum(std::int64_t a, std::uint64_t q, unsigned n, std::int64_t b);

/// (1/q) sum_{b=0}^{q-1} |gauss_sum(a, q, n, b)|^2, which is q for coprime a.
double gauss_second_moment(std::int64_t a, std::uint64_t q, unsigned n);

struct RationalApprox {
  std::int64_t a = 0;
  std::uint64_t q = 1;
  double theta = 0;  // (alpha - a/q) q tau, in [-1, 1]
  double tau = 1;
  double z = 0;      // alpha - a/q = theta / (q tau)
};

/// Smallest q <= tau with |alpha - a/q| <= 1/(q tau), found among the
/// continued-fraction convergents of alpha. Exact: alpha and tau are
/// expanded as the rationals their doubles represent. Requires tau >= 1 and
/// |alpha| < 2^62.
RationalApprox rational_approx(double alpha, double tau);

/// Exact check of gcd(a,q) = 1, q <= tau and |q alpha - a| tau <= 1.
bool dirichlet_conditions_hold(double alpha, const RationalApprox& approx);

struct VanDerCorputRow {
  double alpha = 0;
  std::uint64_t P = 0;
  unsigned n = 0;
  std::uint64_t H = 0;
  double lhs = 0;          // |W(alpha)|^2
  double inner_total = 0;  // sum_{1<=h<H} |inner(h)|
  double rhs = 0;          // 2 (P^2/H + (P/H) inner_total + P H)
  double slack = 0;        // rhs - lhs
  bool holds = false;
};

/// Weyl differencing with explicit constants:
///   |W|^2 <= 2 (P^2/H + (P/H) sum_{h<H} |sum_{x<=P-h} eps(x)eps(x+h) e(alpha((x+h)^n - x^n))| + P H).
/// Requires 1 <= H <= max(1, P/4).
VanDerCorputRow van_der_corput_probe(double alpha, std::uint64_t P, unsigned n, std::uint64_t H);

struct ScanRow {
  std::uint64_t a = 0;
  std::uint64_t q = 1;
  double abs_s = 0;
  double abs_w = 0;
  double ratio = 0;  // abs_w / P
};

struct SupScan {
  std::uint64_t P = 0;
  unsigned n = 0;
  std::uint64_t q_max = 0;
  std::vector<ScanRow> rows;  // ascending q, then a; a/q in lowest terms
  std::size_t argmax = 0;     // row with the largest abs_w
  double max_ratio = 0;
  double exponent = 0;        // log(max |W|) / log(P)
};

/// |W(a/q)| / P over every reduced fraction a/q in [0, 1) with q <= q_max.
/// Requires 1 <= q_max <= P.
SupScan sup_scan(std::uint64_t P, unsigned n, std::uint64_t q_max, unsigned threads = 1);

}  // namespace waring

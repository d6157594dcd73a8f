#include "waring/expsums.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "waring/compensated.hpp"
#include "waring/digitcore.hpp"
#include "waring/parallel.hpp"
#include "waring/phase.hpp"

namespace waring {

namespace {

using boost::multiprecision::cpp_int;

void require_power_fits(std::uint64_t P, unsigned n) {
  if (P == 0) throw std::invalid_argument("exponential sum: P must be >= 1");
  if (n == 0) throw std::invalid_argument("exponential sum: n must be >= 1");
  u128 top = 0;
  try {
    top = checked_pow(P, n);
  } catch (const std::overflow_error&) {
    top = ~static_cast<u128>(0);
  }
  if (top >> 127 != 0)
    throw std::overflow_error("exponential sum: P^n must be below 2^127 (P = " +
                              std::to_string(P) + ", n = " + std::to_string(n) + ")");
}

std::vector<u128> power_table(std::uint64_t P, unsigned n) {
  require_power_fits(P, n);
  std::vector<u128> powers(P + 1);
  for (std::uint64_t x = 0; x <= P; ++x) powers[x] = checked_pow(x, n);
  return powers;
}

std::uint64_t pow_mod(std::uint64_t x, unsigned n, std::uint64_t q) {
  u128 r = 1 % q;
  const u128 base = x % q;
  for (unsigned i = 0; i < n; ++i) r = r * base % q;
  return static_cast<std::uint64_t>(r);
}

std::vector<std::complex<double>> roots_of_unity(std::uint64_t q) {
  std::vector<std::complex<double>> roots(q);
  for (std::uint64_t r = 0; r < q; ++r) roots[r] = unit_root(frac_ratio(r, q));
  return roots;
}

ComplexSumValue finish(const CompensatedComplex<double>& acc, std::uint64_t terms) {
  ComplexSumValue out;
  const auto v = acc.value();
  out.re = v.real();
  out.im = v.imag();
  out.terms = terms;
  out.err_bound = static_cast<double>(terms) * kTermError + 2.0 * DBL_EPSILON * std::abs(v);
  if (std::abs(v) > static_cast<double>(terms) + out.err_bound)
    throw std::logic_error("exponential sum exceeds its term count");
  return out;
}

std::uint64_t reduce_mod(std::int64_t a, std::uint64_t q) {
  const auto sq = static_cast<std::int64_t>(q);
  const std::int64_t r = a % sq;
  return static_cast<std::uint64_t>(r < 0 ? r + sq : r);
}

cpp_int exact_numerator(double value, int& shift) {
  // value = numerator * 2^-shift exactly, shift >= 0
  if (value == 0.0) {
    shift = 0;
    return 0;
  }
  int exponent = 0;
  const double mantissa = std::frexp(value, &exponent);
  auto m = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  shift = 53 - exponent;
  cpp_int num = m;
  if (shift < 0) {
    num <<= -shift;
    shift = 0;
  }
  return num;
}

cpp_int round_div(const cpp_int& num, const cpp_int& den) {
  // nearest integer to num/den, den > 0
  cpp_int twice = 2 * num + den;
  cpp_int q = twice / (2 * den);
  if (twice < 0 && q * 2 * den != twice) q -= 1;
  return q;
}

}  // namespace

ComplexSumValue weyl_sum_S(double alpha, std::uint64_t P, unsigned n) {
  const auto powers = power_table(P, n);
  CompensatedComplex<double> acc;
  for (std::uint64_t x = 1; x <= P; ++x) acc += unit_root(frac_product(alpha, powers[x]));
  return finish(acc, P);
}

ComplexSumValue weyl_sum_W(double alpha, std::uint64_t P, unsigned n) {
  const auto powers = power_table(P, n);
  CompensatedComplex<double> acc;
  for (std::uint64_t x = 1; x <= P; ++x)
    acc += static_cast<double>(epsilon_value(x)) * unit_root(frac_product(alpha, powers[x]));
  return finish(acc, P);
}

ComplexSumValue weyl_sum_W_twisted(double z, std::uint64_t b, std::uint64_t q,
                                   std::uint64_t P, unsigned n) {
  if (q == 0) throw std::invalid_argument("weyl_sum_W_twisted: q must be >= 1");
  if (b >= q) throw std::invalid_argument("weyl_sum_W_twisted: need 0 <= b < q");
  const auto powers = power_table(P, n);
  CompensatedComplex<double> acc;
  for (std::uint64_t x = 1; x <= P; ++x) {
    const auto bx = static_cast<std::uint64_t>(static_cast<u128>(b) * (x % q) % q);
    const double phase = add_phase(frac_product(z, powers[x]), negate_phase(frac_ratio(bx, q)));
    acc += static_cast<double>(epsilon_value(x)) * unit_root(phase);
  }
  return finish(acc, P);
}

ComplexSumValue weyl_sum_at_rational(std::uint64_t a, std::uint64_t q, std::uint64_t P,
                                     unsigned n, bool signed_by_epsilon) {
  if (q == 0) throw std::invalid_argument("weyl_sum_at_rational: q must be >= 1");
  if (P == 0) throw std::invalid_argument("weyl_sum_at_rational: P must be >= 1");
  const auto roots = roots_of_unity(q);
  const std::uint64_t a_mod = a % q;
  CompensatedComplex<double> acc;
  for (std::uint64_t x = 1; x <= P; ++x) {
    const auto r = static_cast<std::uint64_t>(static_cast<u128>(a_mod) * pow_mod(x, n, q) % q);
    acc += signed_by_epsilon ? static_cast<double>(epsilon_value(x)) * roots[r] : roots[r];
  }
  return finish(acc, P);
}

ComplexSumValue gauss_sum(std::int64_t a, std::uint64_t q, unsigned n, std::int64_t b) {
  if (q == 0) throw std::invalid_argument("gauss_sum: q must be >= 1");
  const std::uint64_t a_mod = reduce_mod(a, q);
  if (std::gcd(a_mod, q) != 1)
    throw std::invalid_argument("gauss_sum: gcd(a, q) must be 1 (a = " + std::to_string(a) +
                                ", q = " + std::to_string(q) + ")");
  const std::uint64_t b_mod = reduce_mod(b, q);
  const auto roots = roots_of_unity(q);
  CompensatedComplex<double> acc;
  for (std::uint64_t l = 0; l < q; ++l) {
    const u128 r = static_cast<u128>(a_mod) * pow_mod(l, n, q) + static_cast<u128>(b_mod) * l;
    acc += roots[static_cast<std::uint64_t>(r % q)];
  }
  return finish(acc, q);
}

double gauss_second_moment(std::int64_t a, std::uint64_t q, unsigned n) {
  if (q == 0) throw std::invalid_argument("gauss_second_moment: q must be >= 1");
  const std::uint64_t a_mod = reduce_mod(a, q);
  if (std::gcd(a_mod, q) != 1)
    throw std::invalid_argument("gauss_second_moment: gcd(a, q) must be 1");
  const auto roots = roots_of_unity(q);
  std::vector<std::uint64_t> lead(q);
  for (std::uint64_t l = 0; l < q; ++l)
    lead[l] = static_cast<std::uint64_t>(static_cast<u128>(a_mod) * pow_mod(l, n, q) % q);

  CompensatedSum<double> total;
  for (std::uint64_t b = 0; b < q; ++b) {
    CompensatedComplex<double> acc;
    for (std::uint64_t l = 0; l < q; ++l)
      acc += roots[static_cast<std::uint64_t>((static_cast<u128>(b) * l + lead[l]) % q)];
    total += std::norm(acc.value());
  }
  return total.value() / static_cast<double>(q);
}

RationalApprox rational_approx(double alpha, double tau) {
  if (!(tau >= 1.0) || !std::isfinite(tau))
    throw std::invalid_argument("rational_approx: tau must be a finite real >= 1");
  if (!std::isfinite(alpha) || std::abs(alpha) >= 0x1p62)
    throw std::invalid_argument("rational_approx: |alpha| must be below 2^62");

  int alpha_shift = 0;
  const cpp_int alpha_num = exact_numerator(alpha, alpha_shift);
  const cpp_int alpha_den = cpp_int(1) << alpha_shift;
  int tau_shift = 0;
  const cpp_int tau_num = exact_numerator(tau, tau_shift);
  const cpp_int tau_den = cpp_int(1) << tau_shift;

  // candidate q qualifies iff |q*num - p*den| * tau_num <= den * tau_den
  // and q * tau_den <= tau_num
  auto qualifies = [&](const cpp_int& q, const cpp_int& p) {
    if (q * tau_den > tau_num) return false;
    cpp_int gap = q * alpha_num - p * alpha_den;
    if (gap < 0) gap = -gap;
    return gap * tau_num <= alpha_den * tau_den;
  };

  auto emit = [&](const cpp_int& q, const cpp_int& p) {
    RationalApprox out;
    out.a = static_cast<std::int64_t>(p);
    out.q = static_cast<std::uint64_t>(q);
    out.tau = tau;
    // theta = (q alpha - p) tau;  z = alpha - p/q
    const cpp_int gap = q * alpha_num - p * alpha_den;
    const double gap_d = std::ldexp(static_cast<double>(gap), -alpha_shift);
    out.theta = gap_d * tau;
    out.z = gap_d / static_cast<double>(out.q);
    return out;
  };

  // q = 1 with the nearest integer
  {
    const cpp_int p = round_div(alpha_num, alpha_den);
    if (qualifies(1, p)) return emit(1, p);
  }

  // convergents of alpha_num / alpha_den
  cpp_int num = alpha_num, den = alpha_den;
  cpp_int p_prev = 1, q_prev = 0;
  cpp_int p_cur, q_cur = 1;
  {
    cpp_int a0 = num / den;
    if (num < 0 && a0 * den != num) a0 -= 1;  // floor
    p_cur = a0;
    cpp_int rem = num - a0 * den;
    num = den;
    den = rem;
  }
  while (den != 0) {
    const cpp_int ai = num / den;
    const cpp_int rem = num - ai * den;
    const cpp_int p_next = ai * p_cur + p_prev;
    const cpp_int q_next = ai * q_cur + q_prev;
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
    num = den;
    den = rem;
    if (q_cur * tau_den > tau_num) break;
    if (qualifies(q_cur, p_cur)) return emit(q_cur, p_cur);
  }
  throw std::logic_error("rational_approx: no convergent met the Dirichlet bound");
}

bool dirichlet_conditions_hold(double alpha, const RationalApprox& approx) {
  if (approx.q == 0) return false;
  if (std::gcd(static_cast<std::uint64_t>(approx.a < 0 ? -approx.a : approx.a), approx.q) != 1)
    return false;
  int alpha_shift = 0, tau_shift = 0;
  const cpp_int alpha_num = exact_numerator(alpha, alpha_shift);
  const cpp_int tau_num = exact_numerator(approx.tau, tau_shift);
  const cpp_int alpha_den = cpp_int(1) << alpha_shift;
  const cpp_int tau_den = cpp_int(1) << tau_shift;
  if (cpp_int(approx.q) * tau_den > tau_num) return false;
  cpp_int gap = cpp_int(approx.q) * alpha_num - cpp_int(approx.a) * alpha_den;
  if (gap < 0) gap = -gap;
  return gap * tau_num <= alpha_den * tau_den;
}

VanDerCorputRow van_der_corput_probe(double alpha, std::uint64_t P, unsigned n, std::uint64_t H) {
  if (H == 0) throw std::invalid_argument("van_der_corput_probe: H must be >= 1");
  if (H > 1 && H > P / 4)
    throw std::invalid_argument("van_der_corput_probe: need H <= P/4");
  const auto powers = power_table(P, n);

  VanDerCorputRow row;
  row.alpha = alpha;
  row.P = P;
  row.n = n;
  row.H = H;

  CompensatedComplex<double> w;
  for (std::uint64_t x = 1; x <= P; ++x)
    w += static_cast<double>(epsilon_value(x)) * unit_root(frac_product(alpha, powers[x]));
  row.lhs = std::norm(w.value());

  CompensatedSum<double> inner_total;
  for (std::uint64_t h = 1; h < H; ++h) {
    CompensatedComplex<double> inner;
    for (std::uint64_t x = 1; x + h <= P; ++x) {
      const int sign = epsilon_value(x) * epsilon_value(x + h);
      inner += static_cast<double>(sign) * unit_root(frac_product(alpha, powers[x + h] - powers[x]));
    }
    inner_total += std::abs(inner.value());
  }
  row.inner_total = inner_total.value();

  const double p = static_cast<double>(P);
  const double h = static_cast<double>(H);
  row.rhs = 2.0 * (p * p / h + (p / h) * row.inner_total + p * h);
  row.slack = row.rhs - row.lhs;
  row.holds = row.lhs <= row.rhs;
  return row;
}

SupScan sup_scan(std::uint64_t P, unsigned n, std::uint64_t q_max, unsigned threads) {
  if (P < 2) throw std::invalid_argument("sup_scan: P must be >= 2");
  if (q_max == 0 || q_max > P) throw std::invalid_argument("sup_scan: need 1 <= q_max <= P");
  if (n == 0) throw std::invalid_argument("sup_scan: n must be >= 1");

  SupScan scan;
  scan.P = P;
  scan.n = n;
  scan.q_max = q_max;
  for (std::uint64_t q = 1; q <= q_max; ++q)
    for (std::uint64_t a = 0; a < q; ++a)
      if (std::gcd(a, q) == 1) scan.rows.push_back({a, q});

  parallel_for(scan.rows.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      auto& row = scan.rows[i];
      row.abs_s = weyl_sum_at_rational(row.a, row.q, P, n, false).modulus();
      row.abs_w = weyl_sum_at_rational(row.a, row.q, P, n, true).modulus();
      row.ratio = row.abs_w / static_cast<double>(P);
    }
  });

  for (std::size_t i = 0; i < scan.rows.size(); ++i)
    if (scan.rows[i].abs_w > scan.rows[scan.argmax].abs_w) scan.argmax = i;
  scan.max_ratio = scan.rows[scan.argmax].ratio;
  scan.exponent = std::log(scan.rows[scan.argmax].abs_w) / std::log(static_cast<double>(P));
  return scan;
}

}  // namespace waring

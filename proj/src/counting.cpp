#include "waring/counting.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>

#include "waring/compensated.hpp"
#include "waring/errors.hpp"
#include "waring/phase.hpp"

namespace waring {

std::vector<DigitClass> parse_pattern(std::string_view text, unsigned k) {
  if (text.size() != k)
    throw std::invalid_argument("pattern must have length k = " + std::to_string(k) +
                                ", got \"" + std::string(text) + "\"");
  std::vector<DigitClass> out;
  out.reserve(k);
  for (char c : text) {
    if (c == '0')
      out.push_back(DigitClass::Class0);
    else if (c == '1')
      out.push_back(DigitClass::Class1);
    else
      throw std::invalid_argument("pattern characters must be 0 or 1");
  }
  return out;
}

std::string pattern_string(const Pattern& pattern) {
  if (!pattern) return "unrestricted";
  std::string out;
  for (auto c : *pattern) out.push_back(c == DigitClass::Class0 ? '0' : '1');
  return out;
}

namespace {

i128 sum_of_squares(const CoeffVector& v) {
  i128 total = 0;
  for (i128 c : v.coeffs) total = checked_add(total, checked_mul(c, c));
  return total;
}

// Full-length moment cap: s P^n.
std::uint64_t moment_cap(std::uint64_t P, unsigned n, unsigned s, const char* op) {
  u128 top = 0;
  try {
    top = checked_pow(P, n) * s;
  } catch (const std::overflow_error&) {
    throw ResourceLimit(std::string(op) + ": s P^n overflows");
  }
  if (top >= kMaxCoefficients)
    throw ResourceLimit(std::string(op) + ": s P^n = " + to_string(top) +
                        " exceeds the table limit " + std::to_string(kMaxCoefficients));
  return static_cast<std::uint64_t>(top);
}

// Coefficient N of G0^{*c0} * G1^{*c1} * A^{*c_any}.
i128 product_coefficient(const BaseVectors& base, std::uint64_t N, unsigned c0, unsigned c1,
                         unsigned c_any, const ConvolutionOptions& options) {
  CoeffVector acc = delta(N);
  auto times = [&](const CoeffVector& v, unsigned power) {
    if (power == 0) return;
    acc = convolve(acc, convolution_power(v, power, N, options), N, options);
  };
  times(base.G0, c0);
  times(base.G1, c1);
  times(base.A, c_any);
  return acc.coeffs[N];
}

std::complex<double> int_power(std::complex<double> z, unsigned e) {
  std::complex<double> r = 1.0;
  for (unsigned i = 0; i < e; ++i) r *= z;
  return r;
}

}  // namespace

RepCountResult count_representations(std::uint64_t N, unsigned n, unsigned k,
                                     const Pattern& pattern, const ConvolutionOptions& options) {
  if (k == 0) throw std::invalid_argument("count_representations: k must be >= 1");
  if (n == 0) throw std::invalid_argument("count_representations: n must be >= 1");
  if (pattern && pattern->size() != k)
    throw std::invalid_argument("count_representations: pattern length must equal k");

  RepCountResult result{N, n, k, pattern, 0};
  if (N == 0) return result;  // positive integers only

  require_table_size(N, "count_representations");
  const auto base = base_vectors(root_floor(N, n), n, N, options);
  unsigned c0 = 0, c1 = 0, c_any = 0;
  if (!pattern) {
    c_any = k;
  } else {
    for (auto c : *pattern) (c == DigitClass::Class0 ? c0 : c1) += 1;
  }
  result.count = product_coefficient(base, N, c0, c1, c_any, options);
  return result;
}

MomentReport moment_S(std::uint64_t P, unsigned n, unsigned s, const ConvolutionOptions& options) {
  if (P == 0 || n == 0 || s == 0)
    throw std::invalid_argument("moment_S: P, n and s must be >= 1");
  const std::uint64_t cap = moment_cap(P, n, s, "moment_S");
  const auto base = base_vectors(P, n, cap, options);
  const auto power = convolution_power(base.A, s, cap, options);

  MomentReport report;
  report.P = P;
  report.n = n;
  report.s_exponent = 2 * s;
  report.value = sum_of_squares(power);
  const double p = static_cast<double>(P);
  const unsigned two_s = 2 * s;
  if (std::has_single_bit(two_s) && static_cast<unsigned>(std::countr_zero(two_s)) <= n) {
    const int j = std::countr_zero(two_s);
    report.bound_kind = "hua";
    report.reference_bound = std::pow(p, static_cast<double>(two_s) - j);
  } else {
    report.bound_kind = "mean-value-shape";
    report.reference_bound = std::pow(p, static_cast<double>(two_s) - n) + std::pow(p, s);
  }
  return report;
}

MomentReport mixed_moment(std::uint64_t P, unsigned n, unsigned l, unsigned m,
                          const ConvolutionOptions& options) {
  if (P == 0 || n == 0) throw std::invalid_argument("mixed_moment: P and n must be >= 1");
  if (l + m == 0) throw std::invalid_argument("mixed_moment: need l + m >= 1");
  const std::uint64_t cap = moment_cap(P, n, l + m, "mixed_moment");
  const auto base = base_vectors(P, n, cap, options);
  const auto mixed = convolve(convolution_power(base.E, l, cap, options),
                              convolution_power(base.A, m, cap, options), cap, options);

  MomentReport report;
  report.P = P;
  report.n = n;
  report.w_exponent = 2 * l;
  report.s_exponent = 2 * m;
  report.value = sum_of_squares(mixed);
  report.bound_kind = "dominating-moment";
  report.reference_bound = static_cast<double>(sum_of_squares(convolution_power(base.A, l + m, cap, options)));
  return report;
}

DominationCheck domination_check(std::uint64_t P, unsigned n, unsigned l, unsigned m,
                                 const ConvolutionOptions& options) {
  if (P == 0 || n == 0) throw std::invalid_argument("domination_check: P and n must be >= 1");
  if (l + m == 0) throw std::invalid_argument("domination_check: need l + m >= 1");
  const std::uint64_t cap = moment_cap(P, n, l + m, "domination_check");
  const auto base = base_vectors(P, n, cap, options);
  const auto mixed = convolve(convolution_power(base.E, l, cap, options),
                              convolution_power(base.A, m, cap, options), cap, options);
  const auto pure = convolution_power(base.A, l + m, cap, options);

  DominationCheck check;
  check.P = P;
  check.n = n;
  check.l = l;
  check.m = m;
  check.mixed = sum_of_squares(mixed);
  check.pure = sum_of_squares(pure);
  check.pointwise = true;
  for (std::uint64_t u = 0; u <= cap; ++u) {
    if (abs128(mixed.coeffs[u]) > pure.coeffs[u]) {
      check.pointwise = false;
      check.first_violation = u;
      break;
    }
  }
  check.summed = check.mixed <= check.pure;
  return check;
}

std::optional<std::uint64_t> k0_threshold(unsigned n) {
  if (n < 3) return std::nullopt;
  if (n <= 10) return std::uint64_t{1} << n;
  const double dn = n;
  const double inner = dn * dn * (std::log(dn) + std::log(std::log(dn)) + 4.0);
  return 2 * static_cast<std::uint64_t>(std::floor(inner));
}

RatioReport theorem_ratio_report(unsigned n, unsigned k, std::uint64_t from, std::uint64_t to,
                                 const ConvolutionOptions& options) {
  if (from > to || from == 0) throw std::invalid_argument("theorem_ratio_report: empty window");
  if (k < 2) throw std::invalid_argument("theorem_ratio_report: k must be >= 2");
  if (n == 0) throw std::invalid_argument("theorem_ratio_report: n must be >= 1");
  if (k >= 127) throw std::invalid_argument("theorem_ratio_report: k must be below 127");
  require_table_size(to, "theorem_ratio_report");

  RatioReport report;
  report.n = n;
  report.k = k;
  report.from = from;
  report.to = to;
  report.P = root_floor(to, n);
  report.k0 = k0_threshold(n);
  report.k_at_least_k0 = report.k0 && k >= *report.k0;

  const auto base = base_vectors(report.P, n, to, options);
  const auto all = convolution_power(base.A, k, to, options);
  const auto class0 = convolution_power(base.G0, k, to, options);
  const double scale = std::ldexp(1.0, static_cast<int>(k));

  CompensatedSum<double> sum;
  std::vector<double> ratios;
  for (std::uint64_t N = from; N <= to; ++N) {
    RatioRow row{N, class0.coeffs[N], all.coeffs[N], std::nullopt};
    if (row.J > 0) {
      row.ratio = static_cast<double>(row.I) * scale / static_cast<double>(row.J);
      ratios.push_back(*row.ratio);
      sum += *row.ratio;
    }
    report.rows.push_back(row);
  }
  report.ratio_count = ratios.size();
  if (!ratios.empty()) {
    report.mean = sum.value() / static_cast<double>(ratios.size());
    CompensatedSum<double> var;
    for (double r : ratios) var += (r - report.mean) * (r - report.mean);
    report.stddev = std::sqrt(var.value() / static_cast<double>(ratios.size()));
  }
  return report;
}

bool pattern_partition_check(std::uint64_t N, unsigned n, unsigned k,
                             const ConvolutionOptions& options) {
  if (k == 0 || k > 12) throw std::invalid_argument("pattern_partition_check: need 1 <= k <= 12");
  const i128 total = count_representations(N, n, k, std::nullopt, options).count;
  if (N == 0) return total == 0;

  const auto base = base_vectors(root_floor(N, n), n, N, options);
  // count for a pattern depends only on how many slots are Class1
  std::map<unsigned, i128> by_class1;
  i128 sum = 0;
  for (std::uint32_t mask = 0; mask < (1U << k); ++mask) {
    const auto ones = static_cast<unsigned>(std::popcount(mask));
    auto it = by_class1.find(ones);
    if (it == by_class1.end())
      it = by_class1.emplace(ones, product_coefficient(base, N, k - ones, ones, 0, options)).first;
    sum = checked_add(sum, it->second);
  }
  return sum == total;
}

DftCheck dft_cross_check(std::uint64_t N, unsigned n, unsigned k, const Pattern& pattern,
                         std::optional<std::uint64_t> samples) {
  if (k == 0 || n == 0) throw std::invalid_argument("dft_cross_check: n and k must be >= 1");
  if (pattern && pattern->size() != k)
    throw std::invalid_argument("dft_cross_check: pattern length must equal k");
  const std::uint64_t P = root_floor(N, n);
  const u128 degree = checked_pow(P, n) * k;
  const std::uint64_t M = samples.value_or(static_cast<std::uint64_t>(k) * N + 1);
  if (static_cast<u128>(M) <= degree)
    throw std::invalid_argument("dft_cross_check: " + std::to_string(M) +
                                " samples do not exceed the polynomial degree " + to_string(degree));
  require_table_size(M, "dft_cross_check");

  std::vector<std::complex<double>> roots(M);
  for (std::uint64_t r = 0; r < M; ++r) roots[r] = unit_root(frac_ratio(r, M));
  std::vector<std::uint64_t> powers_mod(P + 1);
  for (std::uint64_t x = 1; x <= P; ++x)
    powers_mod[x] = static_cast<std::uint64_t>(checked_pow(x, n) % M);

  unsigned c0 = 0, c1 = 0, c_any = 0;
  if (!pattern) {
    c_any = k;
  } else {
    for (auto c : *pattern) (c == DigitClass::Class0 ? c0 : c1) += 1;
  }

  CompensatedComplex<double> integral;
  for (std::uint64_t r = 0; r < M; ++r) {
    CompensatedComplex<double> s_sum, w_sum;
    for (std::uint64_t x = 1; x <= P; ++x) {
      const auto idx = static_cast<std::uint64_t>(static_cast<u128>(r) * powers_mod[x] % M);
      s_sum += roots[idx];
      w_sum += static_cast<double>(epsilon_value(x)) * roots[idx];
    }
    const auto S = s_sum.value();
    const auto W = w_sum.value();
    const std::complex<double> term =
        int_power((S + W) * 0.5, c0) * int_power((S - W) * 0.5, c1) * int_power(S, c_any);
    const auto back = static_cast<std::uint64_t>(static_cast<u128>(r) * (N % M) % M);
    integral += term * roots[(M - back) % M];
  }

  DftCheck check;
  check.samples = M;
  check.convolution = count_representations(N, n, k, pattern).count;
  const auto value = integral.value() / static_cast<double>(M);
  check.integral_re = value.real();
  check.integral_im = value.imag();
  check.rounded = static_cast<i128>(std::llround(value.real()));
  check.residual = std::abs(value - std::complex<double>(static_cast<double>(check.rounded), 0.0));
  check.agrees = check.rounded == check.convolution && check.residual < 0.01;
  return check;
}

}  // namespace waring

#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "waring/counting.hpp"

using namespace waring;

namespace {

std::vector<int> to_cls(const Pattern& p, unsigned k) {
  if (!p) return std::vector<int>(k, -1);
  std::vector<int> out;
  for (auto c : *p) out.push_back(c == DigitClass::Class0 ? 0 : 1);
  return out;
}

}  // namespace

TEST_CASE("pattern parsing") {
  const auto p = parse_pattern("0110", 4);
  CHECK(p == std::vector<DigitClass>{DigitClass::Class0, DigitClass::Class1, DigitClass::Class1,
                                     DigitClass::Class0});
  CHECK(pattern_string(p) == "0110");
  CHECK(pattern_string(std::nullopt) == "unrestricted");
  CHECK_THROWS_AS(parse_pattern("012", 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_pattern("01", 3), std::invalid_argument);
}

TEST_CASE("representation counts") {
  CHECK(count_representations(4, 3, 4, std::nullopt).count == 1);
  CHECK(count_representations(1729, 3, 2, std::nullopt).count == 4);
  CHECK(count_representations(1729, 3, 2, parse_pattern("00", 2)).count == 2);
  CHECK(count_representations(1729, 3, 2, parse_pattern("11", 2)).count == 0);
  CHECK(count_representations(1729, 3, 2, parse_pattern("01", 2)).count == 1);
  CHECK(count_representations(0, 3, 2, std::nullopt).count == 0);
  CHECK(count_representations(3, 3, 4, std::nullopt).count == 0);
}

TEST_CASE("representation counts agree with enumeration") {
  std::mt19937_64 rng(30);
  for (int trial = 0; trial < 120; ++trial) {
    const unsigned n = 2 + rng() % 3;
    const unsigned k = 1 + rng() % 4;
    const std::uint64_t N = 1 + rng() % 3000;
    Pattern pattern;
    if (trial % 2 == 0) {
      std::vector<DigitClass> slots;
      for (unsigned j = 0; j < k; ++j) slots.push_back(rng() % 2 ? DigitClass::Class1 : DigitClass::Class0);
      pattern = slots;
    }
    const auto opts = ConvolutionOptions{trial % 3 == 0 ? ConvolutionStrategy::Ntt : ConvolutionStrategy::Auto, 1};
    REQUIRE(count_representations(N, n, k, pattern, opts).count ==
            oracle::count_brute(N, n, to_cls(pattern, k)));
  }
}

TEST_CASE("moments agree with brute force") {
  for (std::uint64_t P = 1; P <= 12; ++P)
    for (unsigned n : {3, 4, 5})
      for (unsigned s = 1; s <= 3; ++s) {
        const auto m = moment_S(P, n, s);
        REQUIRE(m.value == oracle::moment_brute(P, n, s));
        REQUIRE(m.value >= static_cast<i128>(oracle::ipow(P, s)));
      }
  CHECK(moment_S(8, 3, 2).value == 120);
  CHECK(moment_S(12, 3, 2).value == 284);
  CHECK(moment_S(5, 3, 2).value == oracle::moment_nested(5, 3, 2));
  CHECK(moment_S(4, 3, 3).value == oracle::moment_nested(4, 3, 3));
  for (std::uint64_t P : {1, 17, 100}) CHECK(moment_S(P, 3, 1).value == static_cast<i128>(P));

  const auto hua = moment_S(10, 3, 2);
  CHECK(hua.bound_kind == "hua");
  CHECK(hua.reference_bound == doctest::Approx(std::pow(10.0, 4 - 2)));
  const auto shape = moment_S(10, 3, 3);
  CHECK(shape.bound_kind == "mean-value-shape");
}

TEST_CASE("mixed moments") {
  for (std::uint64_t P : {3, 8, 11}) {
    CHECK(mixed_moment(P, 3, 0, 2).value == moment_S(P, 3, 2).value);
    CHECK(mixed_moment(P, 3, 1, 0).value == static_cast<i128>(P));
  }
  CHECK(mixed_moment(8, 3, 1, 1).value == 60);
  CHECK(mixed_moment(8, 3, 1, 1).value <= moment_S(8, 3, 2).value);
  CHECK(mixed_moment(8, 3, 1, 1).bound_kind == "dominating-moment");
}

TEST_CASE("domination of mixed moments") {
  for (std::uint64_t P : {4, 16, 40})
    for (unsigned l = 0; l <= 2; ++l)
      for (unsigned m = 0; m + l <= 3; ++m) {
        if (l + m == 0) continue;
        const auto d = domination_check(P, 3, l, m);
        REQUIRE(d.pointwise);
        REQUIRE(d.summed);
        REQUIRE(!d.first_violation);
        REQUIRE(d.mixed <= d.pure);
        REQUIRE(d.mixed == mixed_moment(P, 3, l, m).value);
      }
}

TEST_CASE("k0 threshold") {
  CHECK(!k0_threshold(2));
  CHECK(k0_threshold(3) == 8);
  CHECK(k0_threshold(10) == 1024);
  const double n = 11;
  CHECK(k0_threshold(11) ==
        static_cast<std::uint64_t>(2 * std::floor(n * n * (std::log(n) + std::log(std::log(n)) + 4))));
  CHECK(*k0_threshold(20) > *k0_threshold(11));
}

TEST_CASE("ratio report over a window") {
  const auto r = theorem_ratio_report(3, 4, 100, 140);
  CHECK(r.rows.size() == 41);
  CHECK(r.k0 == 8);
  CHECK(!r.k_at_least_k0);
  std::size_t with_ratio = 0;
  for (const auto& row : r.rows) {
    REQUIRE(row.J == count_representations(row.N, 3, 4, std::nullopt).count);
    std::vector<DigitClass> zeros(4, DigitClass::Class0);
    REQUIRE(row.I == count_representations(row.N, 3, 4, zeros).count);
    REQUIRE(row.ratio.has_value() == (row.J > 0));
    if (row.ratio) {
      ++with_ratio;
      REQUIRE(*row.ratio == doctest::Approx(static_cast<double>(row.I) * 16.0 / static_cast<double>(row.J)));
    }
  }
  CHECK(r.ratio_count == with_ratio);
  CHECK_THROWS_AS(theorem_ratio_report(3, 4, 10, 9), std::invalid_argument);
  CHECK_THROWS_AS(theorem_ratio_report(3, 1, 1, 9), std::invalid_argument);
}

TEST_CASE("pattern partition") {
  CHECK(pattern_partition_check(1729, 3, 2));
  CHECK(pattern_partition_check(500, 3, 5));
  CHECK(pattern_partition_check(300, 2, 8));
}

TEST_CASE("dft cross check") {
  const auto d = dft_cross_check(1729, 3, 2, std::nullopt);
  CHECK(d.samples == 2 * 1729 + 1);
  CHECK(d.convolution == 4);
  CHECK(d.rounded == 4);
  CHECK(d.agrees);
  CHECK(d.residual < 0.01);

  const auto p = dft_cross_check(1729, 3, 2, parse_pattern("00", 2));
  CHECK(p.convolution == 2);
  CHECK(p.agrees);

  const auto q = dft_cross_check(200, 3, 4, parse_pattern("0101", 4));
  CHECK(q.agrees);
  CHECK(q.convolution == count_representations(200, 3, 4, parse_pattern("0101", 4)).count);
  CHECK_THROWS(dft_cross_check(1729, 3, 2, std::nullopt, 1000));
}

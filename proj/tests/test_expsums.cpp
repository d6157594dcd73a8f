#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "waring/expsums.hpp"
#include "waring/phase.hpp"

using namespace waring;

namespace {

double dist(std::complex<double> a, std::complex<double> b) { return std::abs(a - b); }

std::complex<double> to_double(std::complex<long double> z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

}  // namespace

TEST_CASE("frac_product is exact for dyadic alpha") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20000; ++trial) {
    const unsigned bits = 1 + rng() % 50;
    const std::uint64_t num = rng() & ((std::uint64_t{1} << bits) - 1);
    const double alpha = std::ldexp(static_cast<double>(num), -static_cast<int>(bits));
    const std::uint64_t m = rng() >> (rng() % 64);
    // exact: (num * m mod 2^bits) / 2^bits
    const u128 prod = static_cast<u128>(num) * m;
    const u128 mask = (static_cast<u128>(1) << bits) - 1;
    const double expected = std::ldexp(static_cast<double>(prod & mask), -static_cast<int>(bits));
    REQUIRE(frac_product(alpha, m) == doctest::Approx(expected).epsilon(1e-15));
    const double neg = frac_product(-alpha, m);
    REQUIRE(neg == doctest::Approx(negate_phase(expected)).epsilon(1e-15));
  }
  CHECK(frac_product(3.0, 12345) == 0.0);
  CHECK(frac_product(0.5, static_cast<u128>(1) << 100) == 0.0);
  CHECK(frac_product(0.25, 3) == 0.75);
  // huge multiplier: alpha = 2^-70, m = 2^100 + 2^69 -> frac = 1/2
  CHECK(frac_product(std::ldexp(1.0, -70), (static_cast<u128>(1) << 100) + (static_cast<u128>(1) << 69)) == 0.5);
}

TEST_CASE("weyl_sum_S trivial points") {
  for (std::uint64_t P : {1, 10, 1000}) {
    const auto zero = weyl_sum_S(0.0, P, 3);
    CHECK(zero.re == static_cast<double>(P));
    CHECK(zero.im == 0.0);
    CHECK(dist(weyl_sum_S(1.0, P, 5).value(), {static_cast<double>(P), 0}) < 1e-12);
  }
  CHECK(weyl_sum_S(0.5, 4, 3).modulus() < 1e-14);
  CHECK_THROWS_AS(weyl_sum_S(0.1, std::uint64_t{1} << 20, 7), std::overflow_error);
}

TEST_CASE("weyl_sum_W fixtures") {
  // eps(1..8) = -1,-1,+1,-1,+1,+1,-1,-1
  const auto w = weyl_sum_W(0.0, 8, 3);
  CHECK(w.re == -2.0);
  CHECK(w.im == 0.0);

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unit(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double alpha = unit(rng);
    const auto single = weyl_sum_W(alpha, 1, 4);
    const auto expected = -unit_root(frac_product(alpha, 1));
    REQUIRE(dist(single.value(), expected) < 1e-15);
    const auto v = weyl_sum_W(alpha, 500, 3);
    REQUIRE(v.modulus() <= 500.0);
    REQUIRE(v.terms == 500);
  }
}

TEST_CASE("weyl sums agree with a long double oracle") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const double alpha = unit(rng);
    const std::uint64_t P = 1 + rng() % 300;
    const unsigned n = 2 + rng() % 3;
    const auto s = weyl_sum_S(alpha, P, n);
    const auto w = weyl_sum_W(alpha, P, n);
    const double tol = 1e-9 * static_cast<double>(P);
    REQUIRE(dist(s.value(), to_double(oracle::weyl_long_double(alpha, P, n, false))) < tol);
    REQUIRE(dist(w.value(), to_double(oracle::weyl_long_double(alpha, P, n, true))) < tol);
  }
}

TEST_CASE("conjugate symmetry and periodicity") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    // 40 fractional bits keep alpha + 1 and -alpha exactly representable
    const double alpha = std::ldexp(static_cast<double>(rng() >> 24), -40);
    const std::uint64_t P = 1 + rng() % 2000;
    const unsigned n = 2 + rng() % 4;
    const double tol = 1e-12 * static_cast<double>(P);
    const auto s = weyl_sum_S(alpha, P, n);
    const auto w = weyl_sum_W(alpha, P, n);
    REQUIRE(dist(weyl_sum_S(-alpha, P, n).value(), std::conj(s.value())) < tol);
    REQUIRE(dist(weyl_sum_W(-alpha, P, n).value(), std::conj(w.value())) < tol);
    REQUIRE(dist(weyl_sum_S(alpha + 1.0, P, n).value(), s.value()) < tol);
    REQUIRE(dist(weyl_sum_W(alpha + 1.0, P, n).value(), w.value()) < tol);
    REQUIRE(s.err_bound < tol);
  }
}

TEST_CASE("twisted W") {
  for (std::uint64_t P : {5, 64, 300}) {
    CHECK(dist(weyl_sum_W_twisted(0.0, 0, 5, P, 3).value(), weyl_sum_W(0.0, P, 3).value()) < 1e-12);
    CHECK(dist(weyl_sum_W_twisted(0.123, 0, 1, P, 3).value(), weyl_sum_W(0.123, P, 3).value()) < 1e-12);
  }

  // z = 1/2000, b = 3, q = 7, P = 64, n = 3 against long double summation
  const double z = 1.0 / 2000.0;
  std::complex<long double> acc = 0;
  for (std::uint64_t x = 1; x <= 64; ++x) {
    long double ph = static_cast<long double>(z) * static_cast<long double>(x * x * x) -
                     3.0L * static_cast<long double>(x) / 7.0L;
    ph -= std::floor(ph);
    const long double angle = 2.0L * std::numbers::pi_v<long double> * ph;
    acc += std::complex<long double>(std::cos(angle), std::sin(angle)) * static_cast<long double>(oracle::eps(x));
  }
  const auto twisted = weyl_sum_W_twisted(z, 3, 7, 64, 3);
  CHECK(dist(twisted.value(), to_double(acc)) < 1e-9 * 64);
  CHECK_THROWS(weyl_sum_W_twisted(0.1, 7, 7, 10, 3));
}

TEST_CASE("gauss sums") {
  CHECK(dist(gauss_sum(5, 1, 3, 2).value(), {1.0, 0.0}) < 1e-15);
  // n = 1: geometric sum
  for (std::int64_t q = 2; q <= 30; ++q) {
    for (std::int64_t a = 1; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      for (std::int64_t b = 0; b < q; ++b) {
        const double expected = (a + b) % q == 0 ? static_cast<double>(q) : 0.0;
        REQUIRE(dist(gauss_sum(a, q, 1, b).value(), {expected, 0.0}) < 1e-12);
      }
    }
  }
  // q = 5, n = 3, a = 2, b = 0: direct 5-term evaluation
  std::complex<long double> direct = 0;
  for (int l = 0; l < 5; ++l) {
    const long double angle = 2.0L * std::numbers::pi_v<long double> * (2.0L * l * l * l) / 5.0L;
    direct += std::complex<long double>(std::cos(angle), std::sin(angle));
  }
  CHECK(dist(gauss_sum(2, 5, 3, 0).value(), to_double(direct)) < 1e-13);
  CHECK_THROWS_AS(gauss_sum(2, 4, 3, 0), std::invalid_argument);
  CHECK(dist(gauss_sum(-3, 5, 3, 0).value(), gauss_sum(2, 5, 3, 0).value()) < 1e-13);
}

TEST_CASE("gauss second moment equals q") {
  CHECK(gauss_second_moment(1, 7, 3) == doctest::Approx(7.0).epsilon(1e-12));
  CHECK(gauss_second_moment(1, 1, 3) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(gauss_second_moment(7, 100, 5) - 100.0) < 1e-4);
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t q = 1 + rng() % 150;
    std::uint64_t a = rng() % q;
    while (std::gcd(a, q) != 1) a = (a + 1) % q;
    const unsigned n = 1 + rng() % 12;
    const double m = gauss_second_moment(static_cast<std::int64_t>(a), q, n);
    REQUIRE(std::abs(m - static_cast<double>(q)) <= 1e-6 * static_cast<double>(q));
  }
  CHECK_THROWS(gauss_second_moment(6, 9, 2));
}

namespace {

using boost::multiprecision::cpp_rational;
using boost::multiprecision::cpp_int;

cpp_rational exact(double v) {
  int e = 0;
  const double m = std::frexp(v, &e);
  const auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
  cpp_rational r(mant);
  const int shift = e - 53;
  if (shift >= 0) return r * cpp_rational(cpp_int(1) << shift);
  return r / cpp_rational(cpp_int(1) << -shift);
}

// smallest q <= tau with some p satisfying |alpha - p/q| <= 1/(q tau)
std::pair<std::int64_t, std::uint64_t> exhaustive_approx(double alpha, double tau) {
  const cpp_rational a = exact(alpha);
  const cpp_rational t = exact(tau);
  for (std::uint64_t q = 1; cpp_rational(q) <= t; ++q) {
    const cpp_rational qa = a * q;
    cpp_int p = numerator(qa) / denominator(qa);
    const cpp_int cands[] = {cpp_int(p - 1), p, cpp_int(p + 1)};
    for (const cpp_int& cand : cands) {
      cpp_rational gap = qa - cpp_rational(cand);
      if (gap < 0) gap = -gap;
      if (gap * t <= 1) return {static_cast<std::int64_t>(cand), q};
    }
  }
  return {0, 0};
}

}  // namespace

TEST_CASE("rational approximation examples") {
  const auto half = rational_approx(0.5, 10);
  CHECK(half.a == 1);
  CHECK(half.q == 2);
  CHECK(half.theta == 0.0);

  const auto third = rational_approx(1.0 / 3.0 + 1e-9, 100);
  CHECK(third.a == 1);
  CHECK(third.q == 3);
  CHECK(std::abs(third.theta) <= 1.0);

  const double surrogate = 0.70710678118654752;
  const auto r = rational_approx(surrogate, 50);
  CHECK(r.q <= 50);
  CHECK(std::abs(r.theta) <= 1.0);
  const auto [p, q] = exhaustive_approx(surrogate, 50);
  CHECK(r.q == q);
  CHECK(r.a == p);
  CHECK(dirichlet_conditions_hold(surrogate, r));
  CHECK_THROWS(rational_approx(0.3, 0.5));
}

TEST_CASE("rational approximation is the smallest qualifying q") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit(-5.0, 5.0);
  std::uniform_real_distribution<double> taus(1.0, 400.0);
  for (int trial = 0; trial < 400; ++trial) {
    const double alpha = unit(rng);
    const double tau = trial % 5 == 0 ? std::floor(taus(rng)) : taus(rng);
    const auto r = rational_approx(alpha, tau);
    REQUIRE(dirichlet_conditions_hold(alpha, r));
    REQUIRE(std::abs(r.theta) <= 1.0);
    const auto [p, q] = exhaustive_approx(alpha, tau);
    REQUIRE(r.q == q);
    REQUIRE(r.a == p);
    REQUIRE(r.z == doctest::Approx(r.theta / (static_cast<double>(r.q) * tau)).epsilon(1e-9));
  }
}

TEST_CASE("van der Corput probe") {
  const auto trivial = van_der_corput_probe(0.3, 100, 3, 1);
  CHECK(trivial.inner_total == 0.0);
  CHECK(trivial.rhs >= 2.0 * 100 * 100);
  CHECK(trivial.holds);

  const auto zero = van_der_corput_probe(0.0, 256, 3, 16);
  CHECK(zero.holds);
  CHECK(zero.slack > 0);
  CHECK(zero.lhs == doctest::Approx(std::norm(weyl_sum_W(0.0, 256, 3).value())));

  const double golden = 0.6180339887498949;
  CHECK(van_der_corput_probe(golden, 1024, 3, 32).holds);

  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    const std::uint64_t P = 8 + rng() % ((1 << 12) - 8);
    const std::uint64_t H = 1 + rng() % (P / 4);
    const unsigned n = 2 + rng() % 3;
    REQUIRE(van_der_corput_probe(unit(rng), P, n, H).holds);
  }
  CHECK_THROWS(van_der_corput_probe(0.1, 100, 3, 26));
}

TEST_CASE("sup scan over Farey fractions") {
  const auto scan = sup_scan(1 << 10, 3, 50, 2);
  std::size_t expected_rows = 0;
  for (std::uint64_t q = 1; q <= 50; ++q)
    for (std::uint64_t a = 0; a < q; ++a) expected_rows += std::gcd(a, q) == 1 ? 1 : 0;
  CHECK(scan.rows.size() == expected_rows);
  CHECK(scan.rows.front().q == 1);
  CHECK(scan.rows.front().a == 0);
  CHECK(scan.rows.front().abs_w == doctest::Approx(std::abs(weyl_sum_W(0.0, 1 << 10, 3).re)));
  CHECK(scan.max_ratio < 1.0);
  CHECK(scan.max_ratio == scan.rows[scan.argmax].ratio);
  for (const auto& row : scan.rows) {
    REQUIRE(row.abs_s <= 1024.0 + 1e-9);
    REQUIRE(row.abs_w <= 1024.0 + 1e-9);
  }
  // rational evaluation agrees with the real-alpha path at a dyadic point
  const auto at_quarter = weyl_sum_at_rational(1, 4, 1000, 3, true);
  CHECK(dist(at_quarter.value(), weyl_sum_W(0.25, 1000, 3).value()) < 1e-10);

  const auto single = sup_scan(1 << 10, 3, 50, 1);
  for (std::size_t i = 0; i < scan.rows.size(); ++i) CHECK(single.rows[i].abs_w == scan.rows[i].abs_w);
  CHECK_THROWS(sup_scan(10, 3, 11));
}

#include <algorithm>

#include "waring/int128.hpp"
#include "waring/rational.hpp"

namespace waring {

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::string to_string(i128 v) {
  if (v >= 0) return to_string(static_cast<u128>(v));
  return "-" + to_string(static_cast<u128>(0) - static_cast<u128>(v));
}

i128 parse_i128(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  bool negative = false;
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw std::invalid_argument("integer literal has no digits");
  i128 value = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9')
      throw std::invalid_argument("invalid integer literal: " + std::string(s));
    value = checked_add(checked_mul(value, 10), negative ? -(s[i] - '0') : (s[i] - '0'));
  }
  return value;
}

namespace {

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rational::Rational(i128 num, i128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = checked_sub(0, num);
    den = checked_sub(0, den);
  }
  i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = num;
  den_ = den;
}

Rational operator+(const Rational& a, const Rational& b) {
  i128 g = gcd128(a.den_, b.den_);
  i128 da = a.den_ / g;
  i128 db = b.den_ / g;
  return Rational(checked_add(checked_mul(a.num_, db), checked_mul(b.num_, da)),
                  checked_mul(a.den_, db));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  // Cross-cancel first so intermediate products stay small.
  i128 g1 = gcd128(a.num_, b.den_);
  i128 g2 = gcd128(b.num_, a.den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  return Rational(checked_mul(a.num_ / g1, b.num_ / g2),
                  checked_mul(a.den_ / g2, b.den_ / g1));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("rational division by zero");
  return a * Rational(b.den_, b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  i128 lhs = checked_mul(a.num_, b.den_);
  i128 rhs = checked_mul(b.num_, a.den_);
  return lhs <=> rhs;
}

std::string Rational::to_string() const {
  if (den_ == 1) return waring::to_string(num_);
  return waring::to_string(num_) + "/" + waring::to_string(den_);
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational r(1);
  for (unsigned i = 0; i < exponent; ++i) r *= base;
  return r;
}

}  // namespace waring

#pragma once

#include <compare>
#include <numeric>
#include <string>

#include "waring/int128.hpp"

namespace waring {

/// Exact rational with 128-bit numerator and denominator, kept in lowest
/// terms with a positive denominator. Every operation is overflow-checked.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(i128 num) : num_(num) {}  // NOLINT(google-explicit-constructor)
  Rational(i128 num, i128 den);

  i128 num() const { return num_; }
  i128 den() const { return den_; }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(checked_sub(0, num_), den_); }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  Rational abs() const { return Rational(abs128(num_), den_); }
  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  /// "num/den", or just "num" for integers.
  std::string to_string() const;

 private:
  i128 num_ = 0;
  i128 den_ = 1;
};

Rational pow(const Rational& base, unsigned exponent);

}  // namespace waring

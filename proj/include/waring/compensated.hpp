#pragma once

#include <cmath>
#include <complex>

namespace waring {

// Neumaier's variant of Kahan summation: also compensates when the addend
// is larger in magnitude than the running sum.
template <typename Real>
struct CompensatedSum {
  Real sum = Real{0};
  Real compensation = Real{0};

  void operator+=(Real value) {
    const Real t = sum + value;
    if (std::abs(sum) >= std::abs(value)) {
      compensation += (sum - t) + value;
    } else {
      compensation += (value - t) + sum;
    }
    sum = t;
  }

  Real value() const { return sum + compensation; }
};

template <typename Real>
struct CompensatedComplex {
  CompensatedSum<Real> re;
  CompensatedSum<Real> im;

  void operator+=(std::complex<Real> z) {
    re += z.real();
    im += z.imag();
  }

  std::complex<Real> value() const { return {re.value(), im.value()}; }
};

}  // namespace waring

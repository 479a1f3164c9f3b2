#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace expcrit {

struct ComplexPoint {
  double re = 0.0;
  double im = 0.0;

  double modulus() const { return std::hypot(re, im); }
  // signed zero normalized so that -0.0 and +0.0 imaginary parts agree
  double argument() const { return std::atan2(im == 0.0 ? 0.0 : im, re); }
  bool is_real() const { return im == 0.0; }
  bool is_zero() const { return re == 0.0 && im == 0.0; }
  bool is_finite() const { return std::isfinite(re) && std::isfinite(im); }
  std::complex<double> c() const { return {re, im}; }

  ComplexPoint conj() const { return {re, -im}; }

  // 1/lambda
  ComplexPoint inverse() const {
    const double m2 = re * re + im * im;
    return {re / m2, -im / m2};
  }

  friend bool operator==(const ComplexPoint& a, const ComplexPoint& b) {
    return a.re == b.re && a.im == b.im;
  }
};

// Stored order of point sequences: increasing modulus, ties by argument.
struct ModulusArgLess {
  bool operator()(const ComplexPoint& a, const ComplexPoint& b) const {
    const double ma = a.modulus(), mb = b.modulus();
    if (ma != mb) return ma < mb;
    return a.argument() < b.argument();
  }
};

inline void require_finite(const ComplexPoint& p, const std::string& what) {
  if (!p.is_finite())
    throw std::invalid_argument(what + ": non-finite component");
}

}  // namespace expcrit

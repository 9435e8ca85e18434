#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "jkt/rational.hpp"

namespace jkt {

// Tolerance-tagged complex value. Comparisons always go through the tolerance
// carried by the value itself, so a number never forgets the precision under
// which it was produced.
struct ApproxComplex {
  std::complex<double> value{0.0, 0.0};
  double tol = 1e-9;

  ApproxComplex() = default;
  ApproxComplex(std::complex<double> v, double t) : value(v), tol(t) {}
  ApproxComplex(double re, double im, double t) : value(re, im), tol(t) {}

  double re() const { return value.real(); }
  double im() const { return value.imag(); }
  double abs() const { return std::abs(value); }

  bool near(const ApproxComplex& o) const {
    return std::abs(value - o.value) <= std::max(tol, o.tol);
  }
  bool near(std::complex<double> v) const { return std::abs(value - v) <= tol; }
  bool near_zero() const { return std::abs(value) <= tol; }

  friend ApproxComplex operator+(const ApproxComplex& a, const ApproxComplex& b) {
    return {a.value + b.value, std::max(a.tol, b.tol)};
  }
  friend ApproxComplex operator-(const ApproxComplex& a, const ApproxComplex& b) {
    return {a.value - b.value, std::max(a.tol, b.tol)};
  }
  friend ApproxComplex operator*(const ApproxComplex& a, const ApproxComplex& b) {
    return {a.value * b.value, std::max(a.tol, b.tol)};
  }
  friend ApproxComplex operator-(const ApproxComplex& a) { return {-a.value, a.tol}; }
};

inline ApproxComplex approx_of(const Rational& q, double tol = 1e-12) {
  return ApproxComplex(to_double(q), 0.0, tol);
}

inline std::string to_string(const ApproxComplex& a) {
  char buf[64];
  if (std::abs(a.im()) <= a.tol)
    std::snprintf(buf, sizeof buf, "%.12g", a.re());
  else
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", a.re(), a.im());
  return buf;
}

}  // namespace jkt

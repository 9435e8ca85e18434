#pragma once

#include <complex>
#include <vector>

namespace jkt {

// Truncated power series with dense complex coefficients; index = exponent.
struct CSeries {
  std::vector<std::complex<double>> c;  // size = truncation length
  int len() const { return static_cast<int>(c.size()); }

  static CSeries zero(int n) {
    CSeries s;
    s.c.assign(n, {0.0, 0.0});
    return s;
  }
  static CSeries constant(std::complex<double> v, int n) {
    CSeries s = zero(n);
    if (n > 0) s.c[0] = v;
    return s;
  }
  static CSeries monomial(std::complex<double> v, int k, int n) {
    CSeries s = zero(n);
    if (k < n) s.c[k] = v;
    return s;
  }

  friend CSeries operator+(const CSeries& a, const CSeries& b) {
    CSeries r = CSeries::zero(std::max(a.len(), b.len()));
    for (int i = 0; i < a.len(); ++i) r.c[i] += a.c[i];
    for (int i = 0; i < b.len(); ++i) r.c[i] += b.c[i];
    return r;
  }
  friend CSeries operator-(const CSeries& a, const CSeries& b) {
    CSeries r = CSeries::zero(std::max(a.len(), b.len()));
    for (int i = 0; i < a.len(); ++i) r.c[i] += a.c[i];
    for (int i = 0; i < b.len(); ++i) r.c[i] -= b.c[i];
    return r;
  }
  // product truncated to length n
  static CSeries mul(const CSeries& a, const CSeries& b, int n) {
    CSeries r = zero(n);
    for (int i = 0; i < a.len() && i < n; ++i) {
      if (a.c[i] == std::complex<double>(0.0, 0.0)) continue;
      for (int j = 0; j < b.len() && i + j < n; ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    return r;
  }
  int order(double eps) const {  // first index with |coef| > eps; len() if none
    for (int i = 0; i < len(); ++i)
      if (std::abs(c[i]) > eps) return i;
    return len();
  }
};

}  // namespace jkt

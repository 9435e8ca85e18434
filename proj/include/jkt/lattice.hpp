#pragma once

#include <string>
#include <vector>

#include "jkt/rational.hpp"

namespace jkt {

// Divisor class: integer coordinate vector over the current basis of the
// surface's second homology lattice.
using DivisorClass = std::vector<long long>;

inline DivisorClass dc_zero(int n) { return DivisorClass(n, 0); }

inline DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
  DivisorClass r(a);
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}
inline DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) {
  DivisorClass r(a);
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return r;
}
inline DivisorClass operator*(long long s, const DivisorClass& a) {
  DivisorClass r(a);
  for (auto& x : r) x *= s;
  return r;
}

struct IntersectionLattice {
  std::vector<std::string> labels;
  std::vector<std::vector<long long>> gram;

  int rank() const { return static_cast<int>(labels.size()); }

  long long pair(const DivisorClass& a, const DivisorClass& b) const {
    long long s = 0;
    for (int i = 0; i < rank(); ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < rank(); ++j)
        if (b[j] != 0) s += a[i] * gram[i][j] * b[j];
    }
    return s;
  }
  long long self(const DivisorClass& a) const { return pair(a, a); }

  // determinant of the Gram matrix, exact
  Integer det() const {
    int n = rank();
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m[i][j] = Rational(gram[i][j]);
    Rational d(1);
    for (int c = 0; c < n; ++c) {
      int piv = -1;
      for (int r = c; r < n; ++r)
        if (m[r][c] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) return 0;
      if (piv != c) {
        std::swap(m[piv], m[c]);
        d = -d;
      }
      d *= m[c][c];
      Rational inv = Rational(1) / m[c][c];
      for (int r = c + 1; r < n; ++r) {
        Rational f = m[r][c] * inv;
        if (f == 0) continue;
        for (int cc = c; cc < n; ++cc) m[r][cc] -= f * m[c][cc];
      }
    }
    if (den(d) != 1) throw std::logic_error("lattice det: non-integer determinant");
    return num(d);
  }

  bool unimodular() const {
    Integer d = det();
    return d == 1 || d == -1;
  }

  // Gram of an arbitrary family of classes
  std::vector<std::vector<long long>> gram_of(const std::vector<DivisorClass>& cls) const {
    size_t n = cls.size();
    std::vector<std::vector<long long>> g(n, std::vector<long long>(n, 0));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) g[i][j] = pair(cls[i], cls[j]);
    return g;
  }
};

inline Integer int_matrix_det(const std::vector<std::vector<long long>>& a) {
  IntersectionLattice l;
  l.labels.assign(a.size(), "");
  l.gram = a;
  return l.det();
}

}  // namespace jkt

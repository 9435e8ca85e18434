#pragma once

#include <array>

#include "jkt/poly.hpp"

namespace jkt {

// Fixed 3x3 matrix over a commutative ring.
template <class T>
struct Mat3 {
  std::array<std::array<T, 3>, 3> a{};

  static Mat3 zero() {
    Mat3 m;
    for (auto& r : m.a)
      for (auto& x : r) x = T(0);
    return m;
  }
  static Mat3 diag(T x, T y, T z) {
    Mat3 m = zero();
    m.a[0][0] = std::move(x);
    m.a[1][1] = std::move(y);
    m.a[2][2] = std::move(z);
    return m;
  }

  T& operator()(int i, int j) { return a[i][j]; }
  const T& operator()(int i, int j) const { return a[i][j]; }

  friend Mat3 operator+(const Mat3& p, const Mat3& q) {
    Mat3 r = zero();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.a[i][j] = p.a[i][j] + q.a[i][j];
    return r;
  }
  friend Mat3 operator*(const Mat3& p, const Mat3& q) {
    Mat3 r = zero();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) r.a[i][j] += p.a[i][k] * q.a[k][j];
    return r;
  }
  friend Mat3 operator*(const T& s, const Mat3& p) {
    Mat3 r = zero();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.a[i][j] = s * p.a[i][j];
    return r;
  }

  T trace() const { return a[0][0] + a[1][1] + a[2][2]; }
  T det() const {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  }
  // second elementary symmetric polynomial of the eigenvalues
  T e2() const {
    T m00 = a[1][1] * a[2][2] - a[1][2] * a[2][1];
    T m11 = a[0][0] * a[2][2] - a[0][2] * a[2][0];
    T m22 = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    return m00 + m11 + m22;
  }
};

using QMat3 = Mat3<Rational>;
using QPolyMat3 = Mat3<QPoly>;

}  // namespace jkt

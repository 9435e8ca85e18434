#pragma once

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "jkt/rational.hpp"

namespace jkt {

// Dense univariate polynomial. Coefficient vector is trimmed, so
// coeffs.size() == degree + 1 and coeffs.back() != 0 for nonzero polynomials.
template <class T>
struct UniPoly {
  std::vector<T> c;

  UniPoly() = default;
  explicit UniPoly(T c0) {
    c.push_back(std::move(c0));
    trim();
  }
  UniPoly(std::initializer_list<T> cs) : c(cs) { trim(); }

  static UniPoly zero() { return UniPoly(); }
  static UniPoly one() { return UniPoly(T(1)); }
  // x^k
  static UniPoly monomial(T a, int k) {
    UniPoly p;
    p.c.assign(k + 1, T(0));
    p.c[k] = std::move(a);
    p.trim();
    return p;
  }

  void trim() {
    while (!c.empty() && c.back() == T(0)) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
  const T& coeff(int k) const {
    static const T z{0};
    return (k >= 0 && k < (int)c.size()) ? c[k] : z;
  }
  void set_coeff(int k, T v) {
    if (k >= (int)c.size()) c.resize(k + 1, T(0));
    c[k] = std::move(v);
    trim();
  }
  const T& lead() const {
    if (is_zero()) throw std::domain_error("lead of zero polynomial");
    return c.back();
  }

  T eval(const T& x) const {
    T r(0);
    for (int i = degree(); i >= 0; --i) r = r * x + c[i];
    return r;
  }

  UniPoly derivative() const {
    UniPoly d;
    for (int i = 1; i <= degree(); ++i) d.c.push_back(c[i] * T(i));
    d.trim();
    return d;
  }

  // p(x + s)
  UniPoly shift(const T& s) const {
    UniPoly r;
    for (int i = degree(); i >= 0; --i) {
      r = r * UniPoly{s, T(1)};
      r += UniPoly(c[i]);
    }
    return r;
  }

  // x^n p(1/x), n >= degree
  UniPoly reverse(int n) const {
    if (n < degree()) throw std::invalid_argument("reverse: n < degree");
    UniPoly r;
    r.c.assign(n + 1, T(0));
    for (int i = 0; i <= degree(); ++i) r.c[n - i] = c[i];
    r.trim();
    return r;
  }

  int valuation() const {  // order of vanishing at 0; degree+1==0 -> throws
    if (is_zero()) throw std::domain_error("valuation of zero polynomial");
    for (int i = 0; i <= degree(); ++i)
      if (!(c[i] == T(0))) return i;
    return 0;
  }

  UniPoly& operator+=(const UniPoly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size(), T(0));
    for (size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
    trim();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size(), T(0));
    for (size_t i = 0; i < o.c.size(); ++i) c[i] -= o.c[i];
    trim();
    return *this;
  }
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator-(const UniPoly& a) {
    UniPoly r = a;
    for (auto& x : r.c) x = -x;
    return r;
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    UniPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, T(0));
    for (size_t i = 0; i < a.c.size(); ++i)
      for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
  }
  friend UniPoly operator*(const T& s, const UniPoly& a) {
    UniPoly r = a;
    for (auto& x : r.c) x = s * x;
    r.trim();
    return r;
  }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c == b.c; }
};

using QPoly = UniPoly<Rational>;

// ---- field-coefficient division -------------------------------------------

template <class T>
std::pair<UniPoly<T>, UniPoly<T>> divmod(const UniPoly<T>& a, const UniPoly<T>& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  UniPoly<T> q, r = a;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    T f = r.lead() / b.lead();
    int d = r.degree() - b.degree();
    q += UniPoly<T>::monomial(f, d);
    r -= UniPoly<T>::monomial(f, d) * b;
  }
  return {q, r};
}

// Exact division; throws if the remainder is nonzero.
template <class T>
UniPoly<T> exact_div(const UniPoly<T>& a, const UniPoly<T>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("exact_div: not divisible");
  return q;
}

inline QPoly monic(const QPoly& p) {
  if (p.is_zero()) return p;
  Rational inv = Rational(1) / p.lead();
  return inv * p;
}

inline QPoly poly_gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    auto [q, r] = divmod(a, b);
    (void)q;
    a = b;
    b = monic(r);
  }
  return monic(a);
}

inline QPoly squarefree_part(const QPoly& p) {
  if (p.degree() <= 0) return p;
  QPoly g = poly_gcd(p, p.derivative());
  if (g.degree() <= 0) return monic(p);
  return monic(exact_div(p, g));
}

// ---- numeric roots ---------------------------------------------------------

// Durand-Kerner on double-precision coefficients. Degrees here stay small
// (<= 12), so this is plenty.
inline std::vector<std::complex<double>> complex_roots(const std::vector<std::complex<double>>& cs,
                                                       int iters = 400) {
  int n = static_cast<int>(cs.size()) - 1;
  std::vector<std::complex<double>> roots;
  if (n <= 0) return roots;
  std::vector<std::complex<double>> a(cs);
  std::complex<double> lead = a[n];
  for (auto& x : a) x /= lead;
  double radius = 0.0;
  for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(a[i]));
  radius = 1.0 + radius;
  roots.resize(n);
  for (int i = 0; i < n; ++i) {
    double ang = 2.0 * 3.14159265358979323846 * i / n + 0.41;
    roots[i] = radius * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  auto eval = [&](std::complex<double> x) {
    std::complex<double> r = 0;
    for (int i = n; i >= 0; --i) r = r * x + a[i];
    return r;
  };
  for (int it = 0; it < iters; ++it) {
    double move = 0.0;
    for (int i = 0; i < n; ++i) {
      std::complex<double> d(1.0, 0.0);
      for (int j = 0; j < n; ++j)
        if (j != i) d *= (roots[i] - roots[j]);
      if (std::abs(d) < 1e-300) continue;
      std::complex<double> delta = eval(roots[i]) / d;
      roots[i] -= delta;
      move = std::max(move, std::abs(delta));
    }
    if (move < 1e-14 * radius) break;
  }
  return roots;
}

inline std::vector<std::complex<double>> complex_roots(const QPoly& p) {
  std::vector<std::complex<double>> cs;
  for (int i = 0; i <= p.degree(); ++i) cs.push_back({to_double(p.coeff(i)), 0.0});
  return complex_roots(cs);
}

// Exact Lagrange interpolation through distinct rational nodes.
inline QPoly interpolate(const std::vector<std::pair<Rational, Rational>>& pts) {
  QPoly acc;
  for (size_t i = 0; i < pts.size(); ++i) {
    QPoly li{Rational(1)};
    Rational denom(1);
    for (size_t j = 0; j < pts.size(); ++j) {
      if (i == j) continue;
      li = li * QPoly{-pts[j].first, Rational(1)};
      denom *= pts[i].first - pts[j].first;
    }
    acc += (pts[i].second / denom) * li;
  }
  return acc;
}

// All rational roots, with multiplicity, found by numeric proposal plus exact
// verification and exact deflation. `remainder` receives the rational-root-free
// cofactor.
inline std::vector<std::pair<Rational, int>> rational_roots(const QPoly& p, QPoly* remainder = nullptr) {
  std::vector<std::pair<Rational, int>> out;
  if (p.is_zero()) throw std::domain_error("rational_roots of zero polynomial");
  QPoly work = p;
  // x = 0 roots first
  int v = work.valuation();
  if (v > 0) {
    out.push_back({Rational(0), v});
    QPoly shifted;
    shifted.c.assign(work.c.begin() + v, work.c.end());
    work = shifted;
  }
  auto deflate = [&](const Rational& r) {
    int mult = 0;
    while (work.degree() >= 1 && work.eval(r) == 0) {
      work = exact_div(work, QPoly{-r, Rational(1)});
      ++mult;
    }
    if (mult > 0) {
      bool seen = false;
      for (auto& [rr, m] : out)
        if (rr == r) {
          m += mult;
          seen = true;
        }
      if (!seen) out.push_back({r, mult});
    }
    return mult > 0;
  };
  // exact paths for low degree; these are immune to coefficient height
  auto low_degree_pass = [&]() {
    bool progress = true;
    while (progress && work.degree() >= 1 && work.degree() <= 2) {
      progress = false;
      if (work.degree() == 1) {
        progress = deflate(-work.coeff(0) / work.coeff(1));
      } else {
        Rational a = work.coeff(2), b = work.coeff(1), c = work.coeff(0);
        Rational disc = b * b - 4 * a * c;
        if (disc < 0) return;
        Integer n2 = num(disc), d2 = den(disc);
        Integer sn = sqrt(n2), sd = sqrt(d2);
        if (sn * sn != n2 || sd * sd != d2) return;
        Rational s(sn, sd);
        progress = deflate((-b + s) / (2 * a));
        progress = deflate((-b - s) / (2 * a)) || progress;
        if (!progress) return;
      }
    }
  };
  low_degree_pass();
  if (work.degree() >= 1) {
    // propose roots on the squarefree part, where Durand-Kerner is accurate,
    // then count multiplicity by exact deflation of the original
    auto guesses = complex_roots(squarefree_part(work));
    for (auto& g : guesses) {
      if (std::abs(g.imag()) > 1e-6 * (1.0 + std::abs(g))) continue;
      auto cand = rational_reconstruct(g.real(), 1'000'000'000LL, 1e-6);
      if (!cand) continue;
      deflate(*cand);
    }
    low_degree_pass();
  }
  if (remainder) *remainder = work;
  return out;
}

}  // namespace jkt

#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jkt/poly.hpp"
#include "jkt/rational.hpp"

namespace jkt {

// Sparse bivariate polynomial in (x, z); x is the fiber-type variable and z the
// base-type variable throughout the library. No zero coefficients are stored.
template <class T>
struct BiPoly {
  // key = (deg_x, deg_z)
  std::map<std::pair<int, int>, T> t;

  BiPoly() = default;
  explicit BiPoly(T c) {
    if (!(c == T(0))) t[{0, 0}] = std::move(c);
  }

  static BiPoly monomial(T c, int i, int j) {
    BiPoly p;
    if (!(c == T(0))) p.t[{i, j}] = std::move(c);
    return p;
  }
  static BiPoly var_x() { return monomial(T(1), 1, 0); }
  static BiPoly var_z() { return monomial(T(1), 0, 1); }

  bool is_zero() const { return t.empty(); }

  int deg_x() const {
    int d = -1;
    for (auto& [k, v] : t) d = std::max(d, k.first);
    return d;
  }
  int deg_z() const {
    int d = -1;
    for (auto& [k, v] : t) d = std::max(d, k.second);
    return d;
  }
  int val_x() const {  // min x-exponent
    if (is_zero()) throw std::domain_error("val_x of zero");
    int d = INT32_MAX;
    for (auto& [k, v] : t) d = std::min(d, k.first);
    return d;
  }
  int val_z() const {
    if (is_zero()) throw std::domain_error("val_z of zero");
    int d = INT32_MAX;
    for (auto& [k, v] : t) d = std::min(d, k.second);
    return d;
  }
  // multiplicity at the origin
  int mult0() const {
    if (is_zero()) throw std::domain_error("mult0 of zero");
    int d = INT32_MAX;
    for (auto& [k, v] : t) d = std::min(d, k.first + k.second);
    return d;
  }

  T coeff(int i, int j) const {
    auto it = t.find({i, j});
    return it == t.end() ? T(0) : it->second;
  }
  void add_term(int i, int j, const T& c) {
    if (c == T(0)) return;
    auto it = t.find({i, j});
    if (it == t.end()) {
      t[{i, j}] = c;
    } else {
      it->second += c;
      if (it->second == T(0)) t.erase(it);
    }
  }

  // coefficient of x^i as a univariate polynomial in z
  UniPoly<T> coeff_x(int i) const {
    UniPoly<T> p;
    for (auto& [k, v] : t)
      if (k.first == i) p.set_coeff(k.second, v);
    return p;
  }
  UniPoly<T> coeff_z(int j) const {
    UniPoly<T> p;
    for (auto& [k, v] : t)
      if (k.second == j) p.set_coeff(k.first, v);
    return p;
  }
  // leading coefficient as polynomial in the other variable
  UniPoly<T> lead_x() const { return coeff_x(deg_x()); }

  static BiPoly from_coeff_x(const std::vector<UniPoly<T>>& cs) {
    BiPoly p;
    for (int i = 0; i < (int)cs.size(); ++i)
      for (int j = 0; j <= cs[i].degree(); ++j) p.add_term(i, j, cs[i].coeff(j));
    return p;
  }

  UniPoly<T> eval_x(const T& x0) const {  // substitute x = x0
    UniPoly<T> r;
    for (auto& [k, v] : t) {
      T p = v;
      for (int q = 0; q < k.first; ++q) p = p * x0;
      r.set_coeff(k.second, r.coeff(k.second) + p);
    }
    r.trim();
    return r;
  }
  UniPoly<T> eval_z(const T& z0) const {
    UniPoly<T> r;
    for (auto& [k, v] : t) {
      T p = v;
      for (int q = 0; q < k.second; ++q) p = p * z0;
      r.set_coeff(k.first, r.coeff(k.first) + p);
    }
    r.trim();
    return r;
  }
  T eval(const T& x0, const T& z0) const { return eval_x(x0).eval(z0); }

  BiPoly& operator+=(const BiPoly& o) {
    for (auto& [k, v] : o.t) add_term(k.first, k.second, v);
    return *this;
  }
  BiPoly& operator-=(const BiPoly& o) {
    for (auto& [k, v] : o.t) add_term(k.first, k.second, -v);
    return *this;
  }
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator-(const BiPoly& a) {
    BiPoly r;
    for (auto& [k, v] : a.t) r.t[k] = -v;
    return r;
  }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    for (auto& [ka, va] : a.t)
      for (auto& [kb, vb] : b.t) r.add_term(ka.first + kb.first, ka.second + kb.second, va * vb);
    return r;
  }
  friend BiPoly operator*(const T& s, const BiPoly& a) {
    BiPoly r;
    if (s == T(0)) return r;
    for (auto& [k, v] : a.t) {
      T c = s * v;
      if (!(c == T(0))) r.t[k] = c;
    }
    return r;
  }
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.t == b.t; }

  BiPoly pow(int e) const {
    BiPoly r(T(1));
    BiPoly b = *this;
    for (int k = e; k > 0; k >>= 1) {
      if (k & 1) r = r * b;
      b = b * b;
    }
    return r;
  }

  // p(px(u,v), pz(u,v))
  BiPoly subs(const BiPoly& px, const BiPoly& pz) const {
    int dx = deg_x(), dz = deg_z();
    std::vector<BiPoly> powx(std::max(dx, 0) + 1), powz(std::max(dz, 0) + 1);
    powx[0] = BiPoly(T(1));
    for (int i = 1; i <= dx; ++i) powx[i] = powx[i - 1] * px;
    powz[0] = BiPoly(T(1));
    for (int j = 1; j <= dz; ++j) powz[j] = powz[j - 1] * pz;
    BiPoly r;
    for (auto& [k, v] : t) r += v * (powx[k.first] * powz[k.second]);
    return r;
  }

  // p(x + a, z + b)
  BiPoly translate(const T& a, const T& b) const {
    BiPoly px = var_x() + BiPoly(a);
    BiPoly pz = var_z() + BiPoly(b);
    return subs(px, pz);
  }

  BiPoly swap_vars() const {
    BiPoly r;
    for (auto& [k, v] : t) r.t[{k.second, k.first}] = v;
    return r;
  }

  // exact division by x^k
  BiPoly div_xk(int k) const {
    BiPoly r;
    for (auto& [kk, v] : t) {
      if (kk.first < k) throw std::domain_error("div_xk: not divisible");
      r.t[{kk.first - k, kk.second}] = v;
    }
    return r;
  }
  BiPoly div_zk(int k) const {
    BiPoly r;
    for (auto& [kk, v] : t) {
      if (kk.second < k) throw std::domain_error("div_zk: not divisible");
      r.t[{kk.first, kk.second - k}] = v;
    }
    return r;
  }

  BiPoly deriv_x() const {
    BiPoly r;
    for (auto& [k, v] : t)
      if (k.first > 0) r.t[{k.first - 1, k.second}] = T(k.first) * v;
    return r;
  }
  BiPoly deriv_z() const {
    BiPoly r;
    for (auto& [k, v] : t)
      if (k.second > 0) r.t[{k.first, k.second - 1}] = T(k.second) * v;
    return r;
  }

  std::string str(const std::string& xn = "x", const std::string& zn = "z") const;
};

using QBiPoly = BiPoly<Rational>;
using CBiPoly = BiPoly<std::complex<double>>;

template <class T>
std::string BiPoly<T>::str(const std::string& xn, const std::string& zn) const {
  if (is_zero()) return "0";
  std::string s;
  for (auto it = t.rbegin(); it != t.rend(); ++it) {
    auto& [k, v] = *it;
    if (!s.empty()) s += " + ";
    s += "(" + jkt::to_string(v) + ")";
    if (k.first) s += "*" + xn + (k.first > 1 ? "^" + std::to_string(k.first) : "");
    if (k.second) s += "*" + zn + (k.second > 1 ? "^" + std::to_string(k.second) : "");
  }
  return s;
}

inline CBiPoly to_complex(const QBiPoly& p) {
  CBiPoly r;
  for (auto& [k, v] : p.t) r.t[k] = std::complex<double>(to_double(v), 0.0);
  return r;
}

// ---- determinant over Q[z] (Bareiss, fraction-free) -------------------------

inline QPoly qpoly_matrix_det(std::vector<std::vector<QPoly>> m) {
  int n = static_cast<int>(m.size());
  if (n == 0) return QPoly::one();
  QPoly prev = QPoly::one();
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k].is_zero()) {
      int piv = -1;
      for (int r = k + 1; r < n; ++r)
        if (!m[r][k].is_zero()) {
          piv = r;
          break;
        }
      if (piv < 0) return QPoly::zero();
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        QPoly numer = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = exact_div(numer, prev);
      }
      m[i][k] = QPoly::zero();
    }
    prev = m[k][k];
  }
  QPoly d = m[n - 1][n - 1];
  return sign < 0 ? -d : d;
}

// Sylvester resultant eliminating x; result is univariate in z.
inline QPoly resultant_x(const QBiPoly& f, const QBiPoly& g) {
  if (f.is_zero() || g.is_zero()) throw std::domain_error("resultant of zero polynomial");
  int m = f.deg_x(), n = g.deg_x();
  if (m <= 0 && n <= 0) throw std::domain_error("resultant: both inputs constant in x");
  std::vector<QPoly> fc(m + 1), gc(n + 1);
  for (int i = 0; i <= m; ++i) fc[i] = f.coeff_x(i);
  for (int i = 0; i <= n; ++i) gc[i] = g.coeff_x(i);
  int N = m + n;
  std::vector<std::vector<QPoly>> s(N, std::vector<QPoly>(N, QPoly::zero()));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) s[r][r + (m - i)] = fc[i];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) s[n + r][r + (n - i)] = gc[i];
  return qpoly_matrix_det(std::move(s));
}

inline QPoly resultant_z(const QBiPoly& f, const QBiPoly& g) {
  return resultant_x(f.swap_vars(), g.swap_vars());
}

inline QPoly discriminant_x(const QBiPoly& f) { return resultant_x(f, f.deriv_x()); }

// ---- gcd over Q[z][x] (primitive PRS) ---------------------------------------

inline QPoly bipoly_content_x(const QBiPoly& p) {
  // gcd over Q[z] of the x-coefficients
  QPoly g = QPoly::zero();
  for (int i = 0; i <= p.deg_x(); ++i) {
    QPoly ci = p.coeff_x(i);
    if (!ci.is_zero()) g = g.is_zero() ? monic(ci) : poly_gcd(g, ci);
    if (g.degree() == 0) break;
  }
  return g.is_zero() ? QPoly::zero() : g;
}

inline QBiPoly bipoly_div_content_x(const QBiPoly& p, const QPoly& content) {
  std::vector<QPoly> cs(p.deg_x() + 1);
  for (int i = 0; i <= p.deg_x(); ++i) cs[i] = exact_div(p.coeff_x(i), content);
  return QBiPoly::from_coeff_x(cs);
}

// pseudo-remainder of f by g w.r.t. x
inline QBiPoly pseudo_rem_x(QBiPoly f, const QBiPoly& g) {
  int dg = g.deg_x();
  QPoly lg = g.coeff_x(dg);
  while (!f.is_zero() && f.deg_x() >= dg) {
    int df = f.deg_x();
    QPoly lf = f.coeff_x(df);
    // f <- lg * f - lf * x^(df-dg) * g
    QBiPoly lgB, lfB;
    for (int j = 0; j <= lg.degree(); ++j) lgB.add_term(0, j, lg.coeff(j));
    for (int j = 0; j <= lf.degree(); ++j) lfB.add_term(df - dg, j, lf.coeff(j));
    f = lgB * f - lfB * g;
  }
  return f;
}

// gcd in Q[z][x], normalized primitive w.r.t. z-content, monic-ish.
inline QBiPoly bipoly_gcd_x(QBiPoly f, QBiPoly g) {
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  if (f.deg_x() == 0 || g.deg_x() == 0) {
    // gcd divides the z-contents
    QPoly cf = f.deg_x() == 0 ? f.coeff_x(0) : bipoly_content_x(f);
    QPoly cg = g.deg_x() == 0 ? g.coeff_x(0) : bipoly_content_x(g);
    QPoly c = poly_gcd(cf, cg);
    QBiPoly r;
    for (int j = 0; j <= c.degree(); ++j) r.add_term(0, j, c.coeff(j));
    return r;
  }
  QPoly cf = bipoly_content_x(f), cg = bipoly_content_x(g);
  QPoly cont = poly_gcd(cf, cg);
  f = bipoly_div_content_x(f, cf);
  g = bipoly_div_content_x(g, cg);
  if (f.deg_x() < g.deg_x()) std::swap(f, g);
  while (true) {
    QBiPoly r = pseudo_rem_x(f, g);
    if (r.is_zero()) break;
    if (r.deg_x() == 0) {
      g = QBiPoly(Rational(1));
      break;
    }
    r = bipoly_div_content_x(r, bipoly_content_x(r));
    f = g;
    g = r;
  }
  if (g.deg_x() == 0) {
    QBiPoly r(Rational(1));
    if (cont.degree() >= 0) {
      QBiPoly c;
      for (int j = 0; j <= cont.degree(); ++j) c.add_term(0, j, cont.coeff(j));
      r = c;
    }
    return r;
  }
  g = bipoly_div_content_x(g, bipoly_content_x(g));
  QBiPoly cB;
  for (int j = 0; j <= cont.degree(); ++j) cB.add_term(0, j, cont.coeff(j));
  QBiPoly out = cB * g;
  // normalize so the leading (x,z)-term has coefficient 1
  Rational lead = out.t.rbegin()->second;
  return (Rational(1) / lead) * out;
}

// squarefree part w.r.t. x of a bivariate polynomial
inline QBiPoly bipoly_squarefree_x(const QBiPoly& p) {
  QBiPoly d = p.deriv_x();
  if (d.is_zero()) return p;
  QBiPoly g = bipoly_gcd_x(p, d);
  if (g.deg_x() <= 0 && g.deg_z() <= 0) return p;
  // exact division p / g via pseudo-division checks
  // do it coefficient-wise through univariate-in-x division over Q(z):
  // multiply by suitable powers; easier: use subresultant-free approach with
  // pseudo-division and content fix.
  // p = g * q exactly; solve by long division in x with rational-function
  // coefficients implemented as (QPoly numerator / common denominator).
  // Here g | p exactly, so plain pseudo-division yields lg^k * p = g * q';
  // divide q' by the z-content introduced.
  int dg = g.deg_x();
  QPoly lg = g.coeff_x(dg);
  QBiPoly rem = p, quot;
  int steps = 0;
  while (!rem.is_zero() && rem.deg_x() >= dg) {
    int dr = rem.deg_x();
    QPoly lr = rem.coeff_x(dr);
    QBiPoly lgB, lrB;
    for (int j = 0; j <= lg.degree(); ++j) lgB.add_term(0, j, lg.coeff(j));
    for (int j = 0; j <= lr.degree(); ++j) lrB.add_term(dr - dg, j, lr.coeff(j));
    quot = lgB * quot + lrB;
    rem = lgB * rem - lrB * g;
    ++steps;
    if (steps > 200) throw std::runtime_error("bipoly_squarefree_x: division stuck");
  }
  if (!rem.is_zero()) throw std::domain_error("bipoly_squarefree_x: gcd does not divide");
  QPoly c = bipoly_content_x(quot);
  if (!c.is_zero() && c.degree() >= 0) quot = bipoly_div_content_x(quot, c);
  return quot;
}

}  // namespace jkt

#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "jkt/approx.hpp"
#include "jkt/bipoly.hpp"
#include "jkt/series.hpp"

namespace jkt {

struct puiseux_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Raised when the input is not squarefree in x: callers must run squarefree
// factorization first.
struct squarefree_required : puiseux_error {
  using puiseux_error::puiseux_error;
};

// One branch x(z) = sum terms[k] z^{k/ram}, valid for exponents k < trunc.
struct PuiseuxBranch {
  int ram = 1;
  std::map<int, ApproxComplex> terms;                 // key: exponent in 1/ram units, >= 0
  std::optional<std::map<int, Rational>> exact;       // full exact mirror (unramified rational case)
  std::optional<Rational> exact_center;               // exact x(0) whenever the center is rational
  int trunc = 0;                                      // exponents < trunc are reliable
  double tol = 1e-9;

  std::complex<double> coeff(int k) const {
    auto it = terms.find(k);
    return it == terms.end() ? std::complex<double>(0, 0) : it->second.value;
  }
};

// ---- Newton polygon ---------------------------------------------------------

struct PolygonSegment {
  Rational slope;  // candidate leading exponent of x in z
  int length;      // horizontal extent (number of roots it accounts for)
  // endpoints (i1,j1) -> (i2,j2) with i1 > i2
  int i1, j1, i2, j2;
};

// Lower Newton polygon of p at the origin: segments with positive slope,
// corresponding to branches x -> 0 as z -> 0.
template <class T>
std::vector<PolygonSegment> newton_polygon(const BiPoly<T>& p) {
  if (p.is_zero()) throw puiseux_error("newton_polygon: zero polynomial");
  // minimal z-exponent per x-exponent
  std::map<int, int> m;
  for (auto& [k, v] : p.t) {
    auto it = m.find(k.first);
    if (it == m.end() || k.second < it->second) m[k.first] = k.second;
  }
  std::vector<std::pair<int, int>> pts(m.begin(), m.end());  // sorted by i
  // lower convex hull (as function of i)
  std::vector<std::pair<int, int>> hull;
  for (auto& pt : pts) {
    while (hull.size() >= 2) {
      auto& a = hull[hull.size() - 2];
      auto& b = hull[hull.size() - 1];
      // drop b if it is above segment a-pt
      long long lhs = (long long)(b.second - a.second) * (pt.first - a.first);
      long long rhs = (long long)(pt.second - a.second) * (b.first - a.first);
      if (lhs >= rhs)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(pt);
  }
  std::vector<PolygonSegment> segs;
  for (size_t k = 0; k + 1 < hull.size(); ++k) {
    auto [ia, ja] = hull[k];
    auto [ib, jb] = hull[k + 1];
    if (ja > jb) {  // slope positive: branch x ~ z^{(ja-jb)/(ib-ia)}
      PolygonSegment s;
      s.slope = Rational(ja - jb, ib - ia);
      s.length = ib - ia;
      s.i1 = ib;
      s.j1 = jb;
      s.i2 = ia;
      s.j2 = ja;
      segs.push_back(s);
    }
  }
  // orient by decreasing slope for a stable order
  std::sort(segs.begin(), segs.end(),
            [](const PolygonSegment& a, const PolygonSegment& b) { return a.slope > b.slope; });
  return segs;
}

namespace detail {


// Evaluate p(U(t), t^e) truncated to length n (t-exponents).
inline CSeries eval_on_series(const CBiPoly& p, const CSeries& U, int e, int n) {
  int dx = p.deg_x();
  std::vector<CSeries> upow(dx + 1);
  upow[0] = CSeries::constant(1.0, n);
  for (int i = 1; i <= dx; ++i) upow[i] = CSeries::mul(upow[i - 1], U, n);
  CSeries r = CSeries::zero(n);
  for (auto& [k, v] : p.t) {
    int zexp = k.second * e;
    if (zexp >= n) continue;
    const CSeries& xp = upow[k.first];
    for (int i = 0; i + zexp < n && i < xp.len(); ++i) r.c[i + zexp] += v * xp.c[i];
  }
  return r;
}

// Linear Hensel stepping: extend U (series in t, z = t^e) so that
// p(U, t^e) = O(t^n). U must already solve the equation to its current length
// in the sense of simple-branch Newton iteration (ord of p_x(U) stabilized).
// Extend U (seeded with its leading term(s), z = t^e) coefficient by
// coefficient so that p(U, t^e) = O(t^n). On a simple branch, ord_t of
// p_x(U, t^e) is a constant v fixed by the leading term; the coefficient of
// t^m in U is then determined by the residual at order m + v. Deterministic,
// no threshold chasing.
inline bool hensel_extend(const CBiPoly& p, CSeries& U, int e, int n, double scale) {
  CBiPoly px = p.deriv_x();
  if (U.len() < n) U.c.resize(n, {0.0, 0.0});
  CSeries D0 = eval_on_series(px, U, e, n);
  double dmax = 0.0;
  for (auto& c : D0.c) dmax = std::max(dmax, std::abs(c));
  if (dmax == 0.0) return false;
  int vD = D0.order(1e-9 * dmax);
  if (vD >= n) return false;
  std::complex<double> lead_d = D0.c[vD];
  // last exponent currently seeded
  int m0 = 0;
  for (int i = U.len() - 1; i >= 0; --i)
    if (U.c[i] != std::complex<double>(0.0, 0.0)) {
      m0 = i;
      break;
    }
  CSeries R = eval_on_series(p, U, e, n);
  double rmax = scale;
  for (auto& c : R.c) rmax = std::max(rmax, std::abs(c));
  // consistency below the first undetermined order
  for (int i = 0; i <= std::min(m0 + vD, n - 1); ++i)
    if (std::abs(R.c[i]) > 1e-7 * rmax) return false;
  for (int m = m0 + 1; m + vD < n; ++m) {
    std::complex<double> um = -R.c[m + vD] / lead_d;
    if (um == std::complex<double>(0.0, 0.0)) continue;
    U.c[m] = um;
    R = eval_on_series(p, U, e, n);
  }
  return true;
}

struct RawBranch {
  int ram = 1;
  std::map<int, std::complex<double>> terms;  // 1/ram units
};

inline long long num_ll(const PolygonSegment& s) {
  return (s.j2 - s.j1) / std::gcd<long long>(s.j2 - s.j1, s.i1 - s.i2);
}
inline long long den_ll(const PolygonSegment& s) {
  return (s.i1 - s.i2) / std::gcd<long long>(s.j2 - s.j1, s.i1 - s.i2);
}

// All branches x -> 0 of q (complex coefficients) at z -> 0, to z-order
// `order` (i.e. exponents < order are found). Recursive Newton-Puiseux.
inline void np_expand(const CBiPoly& q, int order, double tol, std::vector<RawBranch>& out,
                      int depth = 0) {
  if (depth > 8) throw puiseux_error("newton_puiseux: recursion too deep");
  if (q.is_zero()) throw puiseux_error("newton_puiseux: zero polynomial");
  double scale = 0.0;
  for (auto& [k, v] : q.t) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) throw puiseux_error("newton_puiseux: zero polynomial");

  auto segs = newton_polygon(q);
  for (auto& seg : segs) {
    long long num = num_ll(seg);
    long long den = den_ll(seg);
    // Characteristic polynomial of the segment, written in X = c^e where c is
    // the leading Puiseux coefficient. Support point (i, j) lies on the
    // segment iff (i - i2)*(j1 - j2) == (j - j2)*(i1 - i2); the x-exponents on
    // the segment step by e, so phi is a genuine polynomial in X. Each X-root
    // gives one branch class; the e conjugate sheets correspond to the e
    // choices of e-th root of X.
    std::vector<std::complex<double>> phi;  // index: (i - i2)/e
    int e = static_cast<int>(den);
    int stepcount = (seg.i1 - seg.i2) / e;
    phi.assign(stepcount + 1, {0.0, 0.0});
    for (auto& [k, v] : q.t) {
      long long lhs = (long long)(k.first - seg.i2) * (seg.j1 - seg.j2);
      long long rhs = (long long)(k.second - seg.j2) * (seg.i1 - seg.i2);
      if (lhs == rhs && k.first >= seg.i2 && k.first <= seg.i1) {
        int idx = (k.first - seg.i2) / e;
        if ((k.first - seg.i2) % e == 0 && idx < (int)phi.size()) phi[idx] += v;
      }
    }
    auto xroots = complex_roots(phi);
    // cluster equal X-roots (multiplicity over C)
    std::vector<std::pair<std::complex<double>, int>> clustered;
    double ctol = 1e-7 * (1.0 + [&] {
      double m = 0;
      for (auto& r : xroots) m = std::max(m, std::abs(r));
      return m;
    }());
    for (auto& r : xroots) {
      bool merged = false;
      for (auto& [c, m] : clustered)
        if (std::abs(c - r) < ctol) {
          c = (c * double(m) + r) / double(m + 1);
          ++m;
          merged = true;
          break;
        }
      if (!merged) clustered.push_back({r, 1});
    }
    // polish multiple roots: an m-fold root of phi is a simple root of
    // phi^{(m-1)}, where Newton converges quadratically
    for (auto& [X, m] : clustered) {
      if (m <= 1) continue;
      std::vector<std::complex<double>> d(phi);
      for (int k = 1; k <= m - 1; ++k) {
        std::vector<std::complex<double>> nd;
        for (size_t i = 1; i < d.size(); ++i) nd.push_back(double(i) * d[i]);
        d = nd;
      }
      auto evald = [](const std::vector<std::complex<double>>& cs, std::complex<double> x) {
        std::complex<double> r = 0;
        for (int i = static_cast<int>(cs.size()) - 1; i >= 0; --i) r = r * x + cs[i];
        return r;
      };
      std::vector<std::complex<double>> dd;
      for (size_t i = 1; i < d.size(); ++i) dd.push_back(double(i) * d[i]);
      for (int it2 = 0; it2 < 60; ++it2) {
        std::complex<double> fv = evald(d, X), dv = evald(dd, X);
        if (std::abs(dv) < 1e-280) break;
        std::complex<double> step = fv / dv;
        X -= step;
        if (std::abs(step) < 1e-16 * (1.0 + std::abs(X))) break;
      }
    }
    for (auto& [X, mult] : clustered) {
      if (std::abs(X) < ctol) continue;  // X != 0 by construction of the segment
      std::complex<double> c =
          e == 1 ? X : std::pow(X, 1.0 / static_cast<double>(e));
      long long lead = num;              // leading exponent in 1/e units
      if (mult == 1) {
        // Hensel continuation in t with z = t^e
        int n = order * e;  // compute exponents < order (z-units)
        CSeries U = CSeries::monomial(c, static_cast<int>(lead), std::max<int>(n, lead + 1));
        if (!hensel_extend(q, U, e, std::max<int>(n, lead + 1), scale))
          throw puiseux_error("newton_puiseux: Hensel continuation failed");
        RawBranch b;
        b.ram = e;
        for (int k2 = 0; k2 < U.len() && k2 < n; ++k2)
          if (std::abs(U.c[k2]) > 1e-11 * scale) b.terms[k2] = U.c[k2];
        out.push_back(std::move(b));
      } else {
        // substitute u = t^num (c + u~), z = t^e and recurse
        CBiPoly qs;  // q(t^num (c + u~), t^e) as polynomial in (u~, t)
        // build via subs: x -> monomial structures
        CBiPoly xsub;  // t^num * (c + u)
        xsub.add_term(0, static_cast<int>(num), c);
        xsub.add_term(1, static_cast<int>(num), {1.0, 0.0});
        CBiPoly zsub = CBiPoly::monomial({1.0, 0.0}, 0, e);
        qs = q.subs(xsub, zsub);
        int v = qs.val_z();
        qs = qs.div_zk(v);
        // prune numeric dust
        CBiPoly qp;
        double s2 = 0.0;
        for (auto& [k, vv] : qs.t) s2 = std::max(s2, std::abs(vv));
        for (auto& [k, vv] : qs.t)
          if (std::abs(vv) > 1e-12 * s2) qp.t[k] = vv;
        std::vector<RawBranch> inner;
        np_expand(qp, std::max(1, order * e - static_cast<int>(num)), tol, inner, depth + 1);
        for (auto& ib : inner) {
          RawBranch b;
          b.ram = e * ib.ram;
          // u = t^num (c + u~(s)), t = s^{ib.ram}
          b.terms[static_cast<int>(num) * ib.ram] = c;
          for (auto& [k2, v2] : ib.terms) {
            int ex = static_cast<int>(num) * ib.ram + k2;
            auto it = b.terms.find(ex);
            if (it == b.terms.end())
              b.terms[ex] = v2;
            else
              it->second += v2;
          }
          out.push_back(std::move(b));
        }
      }
    }
  }
}

}  // namespace detail

// Exact Hensel lift of a simple rational root x0 of p(x, 0): power series
// branch with rational coefficients, exponents < order.
inline std::map<int, Rational> hensel_rational(const QBiPoly& p, const Rational& x0, int order) {
  QBiPoly px = p.deriv_x();
  Rational d = px.eval(x0, Rational(0));
  if (d == 0) throw puiseux_error("hensel_rational: not a simple root");
  std::map<int, Rational> terms;
  terms[0] = x0;
  // maintain U as QPoly in z (exponents < order)
  QPoly U{x0};
  for (int k = 1; k < order; ++k) {
    // residual coefficient at z^k
    // evaluate p(U(z), z) mod z^{k+1}
    QPoly acc;  // p(U, z) truncated
    // Horner in x
    int dx = p.deg_x();
    for (int i = dx; i >= 0; --i) {
      // acc = acc * U + coeff_x(i)
      QPoly ci = p.coeff_x(i);
      acc = acc * U;
      acc += ci;
      // truncate
      if (acc.degree() > k) acc.c.resize(k + 1), acc.trim();
    }
    Rational rk = acc.coeff(k);
    if (rk == 0) continue;
    Rational uk = -rk / d;
    U.set_coeff(k, uk);
    terms[k] = uk;
  }
  return terms;
}

// All branches of p at z = 0 with finite center, to z-order `order`.
// p must be squarefree in x. Branch count weighted by ramification equals
// deg_x p when the x-leading coefficient does not vanish at z = 0.
inline std::vector<PuiseuxBranch> newton_puiseux(const QBiPoly& p, int order, double tol = 1e-9) {
  if (p.is_zero()) throw puiseux_error("newton_puiseux: zero polynomial");
  {
    QBiPoly g = bipoly_gcd_x(p, p.deriv_x());
    if (g.deg_x() > 0)
      throw squarefree_required("newton_puiseux: input not squarefree in x; factor first");
  }
  std::vector<PuiseuxBranch> out;
  QPoly p0 = p.eval_z(Rational(0));
  if (p0.is_zero()) throw puiseux_error("newton_puiseux: z divides p (curve contains the fiber)");

  QPoly rest;
  auto rroots = rational_roots(p0, &rest);

  for (auto& [x0, mult] : rroots) {
    if (mult == 1) {
      PuiseuxBranch b;
      b.ram = 1;
      b.trunc = order;
      b.tol = tol;
      b.exact_center = x0;
      auto ex = hensel_rational(p, x0, order);
      b.exact = ex;
      for (auto& [k, v] : ex) b.terms[k] = approx_of(v, tol);
      out.push_back(std::move(b));
    } else {
      // ramified (or multi-branch) center: expand u -> 0 of p(x0 + u, z)
      QBiPoly q = p.translate(x0, Rational(0));
      std::vector<detail::RawBranch> raw;
      detail::np_expand(to_complex(q), order, tol, raw);
      int found = 0;
      for (auto& rb : raw) {
        PuiseuxBranch b;
        b.ram = rb.ram;
        b.trunc = order * rb.ram;
        b.tol = tol;
        b.exact_center = x0;
        if (x0 != 0) b.terms[0] = approx_of(x0, tol);
        for (auto& [k, v] : rb.terms) {
          auto it = b.terms.find(k);
          if (it == b.terms.end())
            b.terms[k] = ApproxComplex(v, tol);
          else
            it->second = it->second + ApproxComplex(v, tol);
        }
        found += rb.ram;
        out.push_back(std::move(b));
      }
      if (found != mult)
        throw puiseux_error("newton_puiseux: branch count at center does not match multiplicity");
    }
  }
  if (!rest.is_zero() && rest.degree() > 0) {
    // irrational centers: require them simple
    QPoly sf = squarefree_part(rest);
    if (sf.degree() != rest.degree())
      throw puiseux_error("newton_puiseux: irrational multiple center unsupported");
    for (auto& r : complex_roots(rest)) {
      PuiseuxBranch b;
      b.ram = 1;
      b.trunc = order;
      b.tol = tol;
      // numeric Hensel at a simple complex center
      CBiPoly pc = to_complex(p);
      double scale = 0.0;
      for (auto& [k, v] : pc.t) scale = std::max(scale, std::abs(v));
      CSeries U = CSeries::constant(r, order);
      if (!detail::hensel_extend(pc, U, 1, order, scale))
        throw puiseux_error("newton_puiseux: numeric Hensel failed at irrational center");
      for (int k = 0; k < U.len(); ++k)
        if (std::abs(U.c[k]) > 1e-11 * (1.0 + scale)) b.terms[k] = ApproxComplex(U.c[k], tol);
      out.push_back(std::move(b));
    }
  }
  return out;
}

// Branches at a finite center z = z0.
inline std::vector<PuiseuxBranch> newton_puiseux_at(const QBiPoly& p, const Rational& z0, int order,
                                                    double tol = 1e-9) {
  return newton_puiseux(p.translate(Rational(0), z0), order, tol);
}

// Substitute a branch back into p and return the maximal residual coefficient
// among t-exponents < b.trunc (z = t^{b.ram}), relative to the coefficient
// scale of p and of the accumulated series.
inline double back_substitution_residual(const QBiPoly& p, const PuiseuxBranch& b, int margin = 2) {
  CBiPoly pc = to_complex(p);
  int n = b.trunc + margin;
  CSeries U = CSeries::zero(n);
  for (auto& [k, v] : b.terms)
    if (k < n) U.c[k] = v.value;
  CSeries R = detail::eval_on_series(pc, U, b.ram, n);
  double scale = 1.0;
  for (auto& [k, v] : pc.t) scale = std::max(scale, std::abs(v));
  for (auto& c : U.c) scale = std::max(scale, std::abs(c));
  double worst = 0.0;
  for (int k = 0; k < b.trunc && k < R.len(); ++k) worst = std::max(worst, std::abs(R.c[k]));
  return worst / scale;
}

}  // namespace jkt

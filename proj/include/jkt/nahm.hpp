#pragma once

#include <optional>
#include <vector>

#include "jkt/pipeline.hpp"

namespace jkt {

struct nahm_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Laurent-monomial pair: the rational function N(x, z) x^{-a} z^{-b}. The
// dz-trivialized spectral polynomial and its transforms live here; the
// substitution (z, y) -> (2y, -z/2) maps pairs to pairs exactly.
struct NahmPair {
  QBiPoly N;
  int a = 0;  // negative x-power
  int b = 0;  // negative z-power
};

inline NahmPair nahm_pair_of(const SpectralPoly& sp) {
  SpectralPoly z = sp.chart == Chart::z_chart ? sp : chart_change(sp);
  // P_dz(y, z) = P_O(z^{d0} y, z) / z^{3 d0}
  QBiPoly N = z.P.subs(QBiPoly::monomial(Rational(1), 1, z.d0), QBiPoly::var_z());
  return {N, 0, 3 * z.d0};
}

// Apply y -> z'/2, z -> -2 y' to a pair; output variables are again (x, z)
// with x the new fiber variable.
inline NahmPair nahm_substitute(const NahmPair& p) {
  NahmPair out;
  Rational scalar = (p.b % 2 ? Rational(-1) : Rational(1)) * rat_pow(Rational(2), p.a) /
                    rat_pow(Rational(2), p.b);
  for (auto& [k, c] : p.N.t) {
    int i = k.first, j = k.second;
    Rational v = c * (j % 2 ? Rational(-1) : Rational(1));
    if (j >= i)
      v *= rat_pow(Rational(2), j - i);
    else
      v /= rat_pow(Rational(2), i - j);
    out.N.add_term(j, i, scalar * v);
  }
  out.a = p.b;
  out.b = p.a;
  return out;
}

inline NahmPair nahm_negate(const NahmPair& p) {
  NahmPair out;
  Rational sign((p.a + p.b) % 2 ? -1 : 1);
  for (auto& [k, c] : p.N.t) {
    Rational v = c * ((k.first + k.second) % 2 ? Rational(-1) : Rational(1));
    out.N.add_term(k.first, k.second, sign * v);
  }
  out.a = p.a;
  out.b = p.b;
  return out;
}

inline bool nahm_pairs_equal(const NahmPair& p, const NahmPair& q) {
  // N_p x^{-a_p} z^{-b_p} == N_q x^{-a_q} z^{-b_q}
  QBiPoly lhs = p.N * QBiPoly::monomial(Rational(1), q.a, q.b);
  QBiPoly rhs = q.N * QBiPoly::monomial(Rational(1), p.a, p.b);
  return lhs == rhs;
}

// Exact involutivity: the substitution applied twice equals pullback by
// (z, y) -> (-z, -y). Rational arithmetic, zero tolerance.
inline bool involution_check(const SpectralPoly& sp) {
  NahmPair p = nahm_pair_of(sp);
  NahmPair twice = nahm_substitute(nahm_substitute(p));
  return nahm_pairs_equal(twice, nahm_negate(p));
}

// ---- the dual curve -----------------------------------------------------------

struct DualSpectralPoly {
  QBiPoly Q;          // cleared primitive; deg_x = 2 (dual fiber), deg_z = 3
  QPoly q2, q1, q0;   // x-coefficients of Q
  PencilCurve model;  // monic O-model on F_2: eta^2 + q1 eta + q0 q2
};

inline QBiPoly nahm_clear_primitive(const QBiPoly& in) {
  if (in.is_zero()) throw nahm_error("nahm: zero polynomial");
  QBiPoly Q = in.div_xk(in.val_x()).div_zk(in.val_z());
  // rational content
  Rational content(0);
  for (auto& [k, c] : Q.t) {
    if (content == 0)
      content = rat_abs(c);
    else {
      // gcd of rationals: gcd(num)/lcm(den)
      Integer gn = gcd(num(content), num(rat_abs(c)));
      Integer gl = den(content) * den(c) / gcd(den(content), den(c));
      content = Rational(gn, gl);
    }
  }
  Q = (Rational(1) / content) * Q;
  if (Q.t.rbegin()->second < 0) Q = Rational(-1) * Q;
  return Q;
}

// Spectral-level transform: substitute, clear denominators, take the primitive
// part. The result must be a rank-2 curve of bidegree (2, 3); anything else is
// a rank-swap failure (non-generic input or a family without the transform
// normalization).
inline DualSpectralPoly nahm_transform(const SpectralPoly& sp) {
  NahmPair p = nahm_substitute(nahm_pair_of(sp));
  DualSpectralPoly d;
  d.Q = nahm_clear_primitive(p.N);
  if (d.Q.deg_x() != 2)
    throw nahm_error("nahm_transform: rank-swap failure, deg in the dual fiber variable is " +
                     std::to_string(d.Q.deg_x()) + ", expected 2");
  if (d.Q.deg_z() != 3)
    throw nahm_error("nahm_transform: dual base degree " + std::to_string(d.Q.deg_z()) +
                     ", expected 3");
  d.q2 = d.Q.coeff_x(2);
  d.q1 = d.Q.coeff_x(1);
  d.q0 = d.Q.coeff_x(0);
  if (d.q1.degree() > 2 || d.q0.degree() + d.q2.degree() > 4)
    throw nahm_error("nahm_transform: dual coefficients exceed the O(2) twist bounds");
  QBiPoly M = QBiPoly::monomial(Rational(1), 2, 0);
  QPoly g = d.q0 * d.q2;
  for (int j = 0; j <= d.q1.degree(); ++j) M.add_term(1, j, d.q1.coeff(j));
  for (int j = 0; j <= g.degree(); ++j) M.add_term(0, j, g.coeff(j));
  d.model = {M, 2, 2};
  return d;
}

// ---- dual polar data -----------------------------------------------------------

struct PoleBranch {
  int ram = 1;
  Rational pole_order;  // of the eigenvalue one-form coefficient, may be fractional
  Rational katz;        // max(0, pole_order - 1)
};

struct PolarPoint {
  bool at_infinity = false;
  Rational location;      // finite pole position (dual-plane coordinate)
  int matrix_pole_order;  // ceil of the maximal branch pole order
  std::vector<PoleBranch> branches;
};

namespace detail {

inline Rational rat_ceil(const Rational& q) {
  Integer n = num(q), d = den(q);
  Integer f = n / d;
  if (f * d < n) f += 1;
  return Rational(f);
}

inline int branch_val(const PuiseuxBranch& b, double eps = 1e-9) {
  for (auto& [k, v] : b.terms)
    if (std::abs(v.value) > eps) return k;
  return b.trunc;
}

}  // namespace detail

// Newton-polygon summary of the dual curve's poles: positions, per-branch
// ramification and pole orders, Katz invariants, and the matrix pole orders
// that fix the dual boundary configuration.
inline std::vector<PolarPoint> dual_polar_data(const DualSpectralPoly& d, double tol = 1e-9) {
  std::vector<PolarPoint> out;
  // finite poles: roots of q2
  QPoly rest;
  auto roots = rational_roots(d.q2, &rest);
  if (rest.degree() > 0) throw nahm_error("dual_polar_data: irrational dual pole");
  std::sort(roots.begin(), roots.end(), [](auto& a, auto& b) { return a.first < b.first; });
  int mu_total = 0;
  for (auto& [loc, mu] : roots) {
    PolarPoint pp;
    pp.at_infinity = false;
    pp.location = loc;
    auto branches = newton_puiseux_at(d.model.P, loc, mu + 2, tol);
    Rational maxord(0);
    for (auto& b : branches) {
      int val = detail::branch_val(b);
      Rational ord = Rational(mu) - Rational(val, b.ram);
      if (ord < 0) ord = 0;
      if (ord > 0) pp.branches.push_back({b.ram, ord, std::max(Rational(0), Rational(ord - 1))});
      if (ord > maxord) maxord = ord;
    }
    if (maxord <= 0) throw nahm_error("dual_polar_data: spurious dual pole");
    pp.matrix_pole_order = static_cast<int>(detail::rat_ceil(maxord).convert_to<long long>());
    mu_total += mu;
    out.push_back(std::move(pp));
  }
  // pole at infinity of the dual line
  {
    QBiPoly Pw = pencil_other_chart(d.model);
    PolarPoint pp;
    pp.at_infinity = true;
    auto branches = newton_puiseux(Pw, 6, tol);
    Rational base(4 - mu_total);
    Rational maxord(-100);
    for (auto& b : branches) {
      int val = detail::branch_val(b);
      Rational ord = base - Rational(val, b.ram);
      pp.branches.push_back({b.ram, ord, std::max(Rational(0), Rational(ord - 1))});
      if (ord > maxord) maxord = ord;
    }
    if (maxord > 0) {
      pp.matrix_pole_order = static_cast<int>(detail::rat_ceil(maxord).convert_to<long long>());
      out.push_back(std::move(pp));
    }
  }
  int total = 0;
  for (auto& pp : out) total += pp.matrix_pole_order;
  if (total != 4)
    throw nahm_error("dual_polar_data: dual polar divisor has length " + std::to_string(total) +
                     ", expected 4");
  return out;
}

// Primal-side analog, for regression against the transform: pole orders and
// Katz data of the rank-3 curve at its singular points.
inline std::vector<PolarPoint> primal_polar_data(const SpectralPoly& sp, CaseTag tag) {
  std::vector<PolarPoint> out;
  const CaseInfo& ci = case_info(tag);
  if (ci.d0 == 1) {
    BranchData b0 = eigenvalue_puiseux(sp, tag, false);
    PolarPoint pp;
    pp.at_infinity = false;
    pp.location = Rational(0);
    for (auto& b : b0.branches) {
      int val = detail::branch_val(b);
      Rational ord = Rational(1) - Rational(val, b.ram);
      pp.branches.push_back({b.ram, ord, std::max(Rational(0), Rational(ord - 1))});
    }
    pp.matrix_pole_order = 1;
    out.push_back(std::move(pp));
  }
  BranchData bi = eigenvalue_puiseux(sp, tag, true);
  PolarPoint pp;
  pp.at_infinity = true;
  Rational maxord(0);
  for (auto& b : bi.branches) {
    int val = detail::branch_val(b);
    Rational ord = Rational(ci.m_inf) - Rational(val, b.ram);
    pp.branches.push_back({b.ram, ord, std::max(Rational(0), Rational(ord - 1))});
    if (ord > maxord) maxord = ord;
  }
  pp.matrix_pole_order = static_cast<int>(detail::rat_ceil(maxord).convert_to<long long>());
  out.push_back(std::move(pp));
  return out;
}

// ---- end-to-end comparison -------------------------------------------------------

// The dual boundary configuration is inferred from the computed polar divisor:
// each pole contributes its fiber with multiplicity equal to the matrix pole
// order, plus 2 sigma; linear equivalence with the rank-2 member forces the
// total fiber multiplicity 4 on F_2.
inline PencilConfig dual_pencil_config(const DualSpectralPoly& d) {
  PencilConfig cfg;
  cfg.curve = d.model;
  for (auto& pp : dual_polar_data(d)) {
    FiberSpec fs;
    fs.at_infinity = pp.at_infinity;
    fs.z0 = pp.location;
    fs.mult = pp.matrix_pole_order;
    cfg.fibers.push_back(fs);
  }
  cfg.expected_blowups = 8;
  cfg.blow_down_sigma = false;
  return cfg;
}

struct EndToEnd {
  DynkinLabel rank3;
  DynkinLabel rank2;
  bool equal = false;
};

inline EndToEnd end_to_end_dynkin(const SpectralPoly& sp, CaseTag tag) {
  EndToEnd r;
  r.rank3 = analyze_primal(sp, tag).label;
  DualSpectralPoly d = nahm_transform(sp);
  r.rank2 = analyze_pencil(dual_pencil_config(d)).label;
  r.equal = r.rank3.kodaira == r.rank2.kodaira && r.rank3.dynkin == r.rank2.dynkin;
  return r;
}

}  // namespace jkt

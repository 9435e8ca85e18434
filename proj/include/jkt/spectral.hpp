#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "jkt/bipoly.hpp"
#include "jkt/localforms.hpp"
#include "jkt/puiseux.hpp"

namespace jkt {

enum class Chart { z_chart, w_chart };

// Spectral curve in the O(n)-model: monic cubic in the fiber variable with
// polynomial coefficients of degree <= 1, 2, 3. The w-chart representative of
// an O(n)-coefficient is c_w(w) = w^n c(1/w); the fiber coordinates are glued
// accordingly, so the same point satisfies both chart equations.
struct SpectralPoly {
  QBiPoly P;          // first variable: fiber coordinate eta; second: z or w
  Chart chart = Chart::z_chart;
  int d0 = 0;         // multiplicity of {0} in the polar divisor
  int m_inf = 2;      // pole order at infinity
  int rank = 3;       // degree in the fiber variable
};

struct spectral_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct normal_form_violation : spectral_error {
  using spectral_error::spectral_error;
};

inline SpectralPoly spectral_poly(const HitchinPoint& h, CaseTag tag) {
  const CaseInfo& ci = case_info(tag);
  SpectralPoly sp;
  sp.d0 = ci.d0;
  sp.m_inf = ci.m_inf;
  sp.chart = Chart::z_chart;
  sp.rank = 3;
  QBiPoly P = QBiPoly::monomial(Rational(1), 3, 0);
  const QPoly* cs[3] = {&h.F, &h.G, &h.H};
  for (int n = 1; n <= 3; ++n)
    for (int j = 0; j <= cs[n - 1]->degree(); ++j) P.add_term(3 - n, j, cs[n - 1]->coeff(j));
  sp.P = P;
  return sp;
}

// Chart change: coefficient of eta^k is a section of O(n), n = rank - k, and
// transforms as c -> w^n c(1/w). Involutive.
inline SpectralPoly chart_change(const SpectralPoly& sp) {
  SpectralPoly out = sp;
  out.chart = sp.chart == Chart::z_chart ? Chart::w_chart : Chart::z_chart;
  QBiPoly P;
  for (int k = 0; k <= sp.P.deg_x(); ++k) {
    int n = sp.rank - k;
    QPoly c = sp.P.coeff_x(k);
    if (c.is_zero()) continue;
    if (c.degree() > n) throw spectral_error("chart_change: coefficient degree exceeds twist weight");
    QPoly cw = c.reverse(n);
    for (int j = 0; j <= cw.degree(); ++j) P.add_term(k, j, cw.coeff(j));
  }
  out.P = P;
  return out;
}

inline SpectralPoly spectral_poly_w(const HitchinPoint& h, CaseTag tag) {
  return chart_change(spectral_poly(h, tag));
}

// The curve misses the section at infinity iff the homogenized characteristic
// polynomial has unit zeta^rank coefficient, i.e. the polynomial is monic in
// the fiber variable in both charts.
inline bool infinity_disjoint(const SpectralPoly& sp) {
  auto monic_in = [&](const SpectralPoly& s) {
    if (s.P.deg_x() != s.rank) return false;
    QPoly lead = s.P.coeff_x(s.rank);
    return lead.degree() == 0 && lead.coeff(0) == Rational(1);
  };
  return monic_in(sp) && monic_in(chart_change(sp));
}

// ---- eigenvalue branches and irregular normal forms -------------------------

// Principal part of (1/2) q for one branch, derived from the eigenvalue
// expansion in the dw (resp. dz) trivialization: terms of exponent < -1 are
// formally integrated, the exponent -1 coefficient is the residue eigenvalue.
struct HalfQForm {
  int ram = 1;
  std::map<int, ApproxComplex> terms;            // exponent in 1/ram units, < 0
  std::optional<std::map<int, Rational>> exact;  // exact mirror when available
  ApproxComplex residue;
  std::optional<Rational> residue_exact;
};

struct BranchData {
  // center of expansion: z = 0 or w = 0 (infinity)
  bool at_infinity = true;
  std::vector<PuiseuxBranch> branches;  // O-model eta-series
  std::vector<HalfQForm> half_q;        // parallel to branches
  int ramification_contribution = 0;    // sum (e_i - 1)
  std::vector<int> profile;             // sorted descending ramification indices
};

namespace detail {

// From the eta-branch at w = 0 (exponents k/e >= 0) to the dw-eigenvalue
// y = eta * w^{-m}; integrate the polar part.
inline HalfQForm half_q_from_branch(const PuiseuxBranch& b, int m) {
  HalfQForm h;
  h.ram = b.ram;
  int e = b.ram;
  bool all_exact = b.exact.has_value();
  std::map<int, Rational> ex;
  for (auto& [k, c] : b.terms) {
    int num = k - e * m;  // y-exponent in 1/e units
    if (num < -e) {
      // integrate c * w^{num/e}: coefficient c * e / (num + e)
      double factor = static_cast<double>(e) / static_cast<double>(num + e);
      h.terms[num + e] = ApproxComplex(c.value * factor, c.tol);
    } else if (num == -e) {
      h.residue = c;
    }
  }
  if (all_exact) {
    for (auto& [k, cq] : *b.exact) {
      int num = k - e * m;
      if (num < -e)
        ex[num + e] = cq * Rational(e) / Rational(num + e);
      else if (num == -e)
        h.residue_exact = cq;
    }
    h.exact = ex;
  } else if (b.exact_center.has_value()) {
    // the exponent-0 coefficient (the center) is exact; it contributes the
    // deepest integer-exponent tail of q
    int num = -e * m;
    ex[num + e] = *b.exact_center * Rational(e) / Rational(num + e);
    h.exact = ex;
  }
  return h;
}

}  // namespace detail

// Branch structure of the spectral curve over a point of D. For the point at
// infinity the branch profile must match the case; the derived (1/2) q data is
// returned alongside.
inline BranchData eigenvalue_puiseux(const SpectralPoly& sp_z, CaseTag tag, bool at_infinity,
                                     int order = -1, double tol = 1e-9) {
  const CaseInfo& ci = case_info(tag);
  if (order < 0) order = 3 * ci.m_inf + 2;  // enough to read every displayed term
  SpectralPoly sp = sp_z.chart == Chart::z_chart ? sp_z : chart_change(sp_z);
  BranchData out;
  out.at_infinity = at_infinity;
  QBiPoly P = at_infinity ? chart_change(sp).P : sp.P;
  out.branches = newton_puiseux(P, order, tol);
  int total = 0;
  for (auto& b : out.branches) total += b.ram;
  if (total != sp.rank)
    throw normal_form_violation("eigenvalue_puiseux: branch count mismatch");
  for (auto& b : out.branches) {
    out.profile.push_back(b.ram);
    out.ramification_contribution += b.ram - 1;
  }
  std::sort(out.profile.begin(), out.profile.end(), std::greater<int>());
  if (at_infinity) {
    if (out.profile != ci.ram_profile)
      throw normal_form_violation("eigenvalue_puiseux: ramification profile at infinity does not match case " +
                                  std::string(case_name(tag)));
    for (auto& b : out.branches) out.half_q.push_back(detail::half_q_from_branch(b, ci.m_inf));
  } else {
    if (ci.d0 != 1) throw spectral_error("eigenvalue_puiseux: no finite pole for this case");
    // dz-eigenvalue y = eta / z: residue = eta(0)
    for (auto& b : out.branches) out.half_q.push_back(detail::half_q_from_branch(b, ci.d0));
  }
  return out;
}

// ---- smoothness --------------------------------------------------------------

struct SingularWitness {
  Chart chart = Chart::z_chart;
  bool exact = false;
  ApproxComplex base;   // z (or w) coordinate
  ApproxComplex fiber;  // eta coordinate
  std::string note;
};

struct SmoothnessReport {
  bool smooth = true;
  std::vector<SingularWitness> witnesses;
  std::string detail;
};

namespace detail {

inline void affine_singular_scan(const QBiPoly& P, Chart chart, SmoothnessReport& rep, double tol) {
  QBiPoly Px = P.deriv_x(), Pz = P.deriv_z();
  if (Px.is_zero() || P.deg_x() <= 0) return;
  QPoly r1 = resultant_x(P, Px);
  QPoly r2 = Pz.is_zero() ? QPoly::zero() : resultant_x(P, Pz);
  QPoly g = Pz.is_zero() ? r1 : poly_gcd(r1, r2);
  if (g.degree() <= 0) return;  // no common base coordinate: smooth in this chart
  // candidates: rational roots first (exact), then numeric
  QPoly rest;
  auto rr = rational_roots(g, &rest);
  for (auto& [z0, mult] : rr) {
    (void)mult;
    QPoly a = P.eval_z(z0), b = Px.eval_z(z0), c = Pz.eval_z(z0);
    QPoly gg = poly_gcd(poly_gcd(a, b), c.is_zero() ? poly_gcd(a, b) : c);
    if (gg.degree() >= 1) {
      QPoly rem;
      auto yr = rational_roots(gg, &rem);
      for (auto& [y0, m2] : yr) {
        (void)m2;
        rep.smooth = false;
        rep.witnesses.push_back(
            {chart, true, approx_of(z0), approx_of(y0), "common zero of (P, P_x, P_z)"});
      }
      if (rem.degree() >= 1) {
        for (auto& y0 : complex_roots(rem)) {
          rep.smooth = false;
          rep.witnesses.push_back({chart, false, approx_of(z0), ApproxComplex(y0, tol),
                                   "common zero of (P, P_x, P_z), irrational fiber coordinate"});
        }
      }
    }
  }
  if (rest.degree() >= 1) {
    // numeric triangular check at irrational base coordinates
    CBiPoly Pc = to_complex(P), Pxc = to_complex(Px), Pzc = to_complex(Pz);
    double scale = 0.0;
    for (auto& [k, v] : Pc.t) scale = std::max(scale, std::abs(v));
    for (auto& z0 : complex_roots(rest)) {
      UniPoly<std::complex<double>> slice;
      for (auto& [k, v] : Pc.t) {
        std::complex<double> zp = 1.0;
        for (int q = 0; q < k.second; ++q) zp *= z0;
        slice.set_coeff(k.first, slice.coeff(k.first) + v * zp);
      }
      std::vector<std::complex<double>> cs(slice.c);
      for (auto& y0 : complex_roots(cs)) {
        auto evalc = [&](const CBiPoly& f) {
          std::complex<double> acc = 0;
          for (auto& [k, v] : f.t) {
            std::complex<double> tpow = 1.0;
            for (int q = 0; q < k.first; ++q) tpow *= y0;
            for (int q = 0; q < k.second; ++q) tpow *= z0;
            acc += v * tpow;
          }
          return acc;
        };
        double vx = std::abs(evalc(Pxc)), vz = std::abs(evalc(Pzc));
        if (vx < 1e-6 * (1 + scale) && vz < 1e-6 * (1 + scale)) {
          rep.smooth = false;
          rep.witnesses.push_back({chart, false, ApproxComplex(z0, tol), ApproxComplex(y0, tol),
                                   "numeric common zero of (P, P_x, P_z)"});
        }
      }
    }
  }
}

}  // namespace detail

// Smoothness of the spectral curve: squarefreeness, affine scans in both
// charts, and branch regularity over the points of D on the resolved model
// (distinct branch centers per ramification class).
inline SmoothnessReport smoothness_check(const SpectralPoly& sp_in, CaseTag tag, double tol = 1e-9) {
  SmoothnessReport rep;
  SpectralPoly sp = sp_in.chart == Chart::z_chart ? sp_in : chart_change(sp_in);
  QBiPoly g = bipoly_gcd_x(sp.P, sp.P.deriv_x());
  if (g.deg_x() > 0) {
    rep.smooth = false;
    rep.detail = "not squarefree; repeated factor: " + g.str("y", "z");
    return rep;
  }
  detail::affine_singular_scan(sp.P, Chart::z_chart, rep, tol);
  detail::affine_singular_scan(chart_change(sp).P, Chart::w_chart, rep, tol);
  // branch regularity over D
  try {
    BranchData binf = eigenvalue_puiseux(sp, tag, true);
    std::vector<ApproxComplex> centers;
    for (auto& b : binf.branches) centers.push_back(b.terms.count(0) ? b.terms.at(0) : ApproxComplex(0, 0, tol));
    for (size_t i = 0; i < centers.size(); ++i)
      for (size_t j = i + 1; j < centers.size(); ++j)
        if (centers[i].near(centers[j])) {
          rep.smooth = false;
          rep.witnesses.push_back({Chart::w_chart, false, ApproxComplex(0, 0, tol), centers[i],
                                   "colliding branch centers over infinity"});
        }
    if (case_info(tag).d0 == 1) {
      BranchData b0 = eigenvalue_puiseux(sp, tag, false);
      std::vector<ApproxComplex> c0;
      for (auto& b : b0.branches) c0.push_back(b.terms.count(0) ? b.terms.at(0) : ApproxComplex(0, 0, tol));
      for (size_t i = 0; i < c0.size(); ++i)
        for (size_t j = i + 1; j < c0.size(); ++j)
          if (c0[i].near(c0[j])) {
            rep.smooth = false;
            rep.witnesses.push_back({Chart::z_chart, false, ApproxComplex(0, 0, tol), c0[i],
                                     "colliding branch centers over 0"});
          }
    }
  } catch (const normal_form_violation&) {
    throw;
  } catch (const puiseux_error& e) {
    rep.smooth = false;
    rep.detail = std::string("branch analysis failed: ") + e.what();
  }
  return rep;
}

// ---- ramification and genus --------------------------------------------------

struct RamificationData {
  int finite = 0;                // branch points away from D-support (with multiplicity)
  int at_infinity = 0;           // sum (e - 1) over w = 0
  int total = 0;                 // must equal 6 for the three-sheeted JKT curves
  QPoly disc;                    // z-chart discriminant
  bool disc_squarefree = true;
};

inline RamificationData ramification_length(const SpectralPoly& sp_in, CaseTag tag) {
  SpectralPoly sp = sp_in.chart == Chart::z_chart ? sp_in : chart_change(sp_in);
  RamificationData rd;
  rd.disc = resultant_x(sp.P, sp.P.deriv_x());
  if (rd.disc.is_zero()) throw spectral_error("ramification_length: vanishing discriminant");
  QPoly sf = squarefree_part(rd.disc);
  rd.disc_squarefree = (sf.degree() == rd.disc.degree());
  if (!rd.disc_squarefree)
    throw spectral_error("ramification_length: multiple finite branch points (degenerate member)");
  rd.finite = rd.disc.degree();
  BranchData binf = eigenvalue_puiseux(sp, tag, true);
  rd.at_infinity = binf.ramification_contribution;
  rd.total = rd.finite + rd.at_infinity;
  return rd;
}

// Discriminant of the Hitchin family in the parameter t: vanishes exactly at
// the degenerate members. Computed by exact evaluation of
// disc_z(disc_eta P_t) at rational nodes plus exact interpolation, verified on
// held-out nodes.
inline QPoly family_discriminant(const HitchinFamily& fam, CaseTag tag, int degree_cap = 40) {
  auto value_at = [&](const Rational& t) -> Rational {
    SpectralPoly m = spectral_poly(family_member(fam, t), tag);
    QPoly disc = resultant_x(m.P, m.P.deriv_x());
    if (disc.degree() < 1) return Rational(0);
    QPoly d2 = disc.derivative();
    // resultant of disc and disc' in z
    QBiPoly a, b;
    for (int j = 0; j <= disc.degree(); ++j) a.add_term(j, 0, disc.coeff(j));
    for (int j = 0; j <= d2.degree(); ++j) b.add_term(j, 0, d2.coeff(j));
    QPoly r = resultant_x(a, b);
    return r.coeff(0);
  };
  std::vector<std::pair<Rational, Rational>> pts;
  for (int k = 0; k <= degree_cap; ++k) pts.push_back({Rational(k), value_at(Rational(k))});
  QPoly R = interpolate(pts);
  for (int k = 1; k <= 4; ++k) {
    Rational t(-k);
    if (R.eval(t) != value_at(t))
      throw spectral_error("family_discriminant: degree cap too low");
  }
  return R;
}

// Numeric singular witness on a degenerate member at complex t: a common zero
// of (P, P_eta, P_z) within tol.
struct DegenerateMember {
  std::complex<double> t;
  std::complex<double> base;
  std::complex<double> fiber;
};

inline std::optional<DegenerateMember> singular_member_witness(const HitchinFamily& fam,
                                                               CaseTag tag, double tol = 1e-6) {
  QPoly R = family_discriminant(fam, tag);
  if (R.is_zero()) return std::nullopt;
  SpectralPoly base = spectral_poly(fam.base, tag);
  SpectralPoly dir = spectral_poly(fam.direction, tag);
  CBiPoly B = to_complex(base.P);
  CBiPoly Dp = to_complex(dir.P - QBiPoly::monomial(Rational(1), 3, 0));
  for (auto& t0 : complex_roots(R)) {
    CBiPoly P;
    for (auto& [k, v] : B.t) P.t[k] = v;
    for (auto& [k, v] : Dp.t) {
      auto it = P.t.find(k);
      if (it == P.t.end())
        P.t[k] = v * t0;
      else
        it->second += v * t0;
    }
    CBiPoly Px = P.deriv_x(), Pz = P.deriv_z();
    double scale = 0.0;
    for (auto& [k, v] : P.t) scale = std::max(scale, std::abs(v));
    auto slice_at = [](const CBiPoly& f, std::complex<double> z0) {
      UniPoly<std::complex<double>> s;
      for (auto& [kk, v] : f.t)
        s.set_coeff(kk.first, s.coeff(kk.first) + v * std::pow(z0, kk.second));
      return s;
    };
    // Res_eta(P, P_eta) as a numeric polynomial in z, by evaluation at nodes
    // plus Newton-form interpolation; its roots carry the singular points.
    int n = 2 * P.deg_z() * P.deg_x() + 3;
    std::vector<std::complex<double>> nodes(n), vals(n);
    for (int k = 0; k < n; ++k) {
      std::complex<double> z0(0.37 + 0.61 * k, 0.11 + 0.07 * k);
      auto s1 = slice_at(P, z0);
      auto s2 = slice_at(Px, z0);
      std::complex<double> res = 1.0;
      for (auto& rt : complex_roots(std::vector<std::complex<double>>(s1.c))) {
        std::complex<double> acc = 0;
        for (int i = s2.degree(); i >= 0; --i) acc = acc * rt + s2.coeff(i);
        res *= acc;
      }
      nodes[k] = z0;
      vals[k] = res;
    }
    std::vector<std::complex<double>> dd(vals);
    for (int j = 1; j < n; ++j)
      for (int i = n - 1; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - j]);
    std::vector<std::complex<double>> poly{dd[n - 1]};
    for (int i = n - 2; i >= 0; --i) {
      std::vector<std::complex<double>> np(poly.size() + 1, 0.0);
      for (size_t k2 = 0; k2 < poly.size(); ++k2) {
        np[k2 + 1] += poly[k2];
        np[k2] -= poly[k2] * nodes[i];
      }
      np[0] += dd[i];
      poly = np;
    }
    while (poly.size() > 1 && std::abs(poly.back()) < 1e-8 * (1 + scale)) poly.pop_back();
    auto eval_at = [](const CBiPoly& f, std::complex<double> y, std::complex<double> z) {
      std::complex<double> acc = 0;
      for (auto& [kk, v] : f.t) acc += v * std::pow(y, kk.first) * std::pow(z, kk.second);
      return acc;
    };
    CBiPoly Pxx = Px.deriv_x(), Pxz = Px.deriv_z(), Pzz = Pz.deriv_z();
    for (auto& z0 : complex_roots(poly)) {
      auto s1 = slice_at(P, z0);
      for (auto& y0 : complex_roots(std::vector<std::complex<double>>(s1.c))) {
        // polish the critical point of P with 2x2 Newton on (P_eta, P_z);
        // the Hessian is nondegenerate at a node
        std::complex<double> y = y0, z = z0;
        for (int it = 0; it < 40; ++it) {
          std::complex<double> f1 = eval_at(Px, y, z), f2 = eval_at(Pz, y, z);
          std::complex<double> a11 = eval_at(Pxx, y, z), a12 = eval_at(Pxz, y, z);
          std::complex<double> a21 = a12, a22 = eval_at(Pzz, y, z);
          std::complex<double> det = a11 * a22 - a12 * a21;
          if (std::abs(det) < 1e-14 * (1 + scale)) break;
          std::complex<double> dy = (f1 * a22 - f2 * a12) / det;
          std::complex<double> dz = (a11 * f2 - a21 * f1) / det;
          y -= dy;
          z -= dz;
          if (std::abs(dy) + std::abs(dz) < 1e-15 * (1 + std::abs(y) + std::abs(z))) break;
        }
        if (std::abs(eval_at(P, y, z)) < tol * (1 + scale) &&
            std::abs(eval_at(Px, y, z)) < tol * (1 + scale) &&
            std::abs(eval_at(Pz, y, z)) < tol * (1 + scale))
          return DegenerateMember{t0, y, z};
      }
    }
  }
  return std::nullopt;
}

struct EulerGenus {
  int euler = 0;
  int genus = 0;
};

inline EulerGenus euler_genus(const SpectralPoly& sp, CaseTag tag) {
  SmoothnessReport rep = smoothness_check(sp, tag);
  if (!rep.smooth) throw spectral_error("euler_genus: curve is singular; refusing");
  RamificationData rd = ramification_length(sp, tag);
  EulerGenus eg;
  eg.euler = sp.rank * 2 - rd.total;
  eg.genus = (2 - eg.euler) / 2;
  return eg;
}

}  // namespace jkt

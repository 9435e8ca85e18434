#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "jkt/approx.hpp"
#include "jkt/matrix.hpp"
#include "jkt/poly.hpp"
#include "jkt/rational.hpp"

namespace jkt {

// The six irregular cases. The polar divisor is D = {0} + 2{inf} for
// VI, V, IVa and D = 3{inf} for IVb, II, I; the twist of the leading term at
// infinity runs untwisted / minimally / maximally twisted within each group.
// A seventh, logarithmic configuration exists (three simple poles, fiber of
// type IV at infinity); it connects to none of the Painleve systems and is
// not modeled here.
enum class CaseTag { VI, V, IVa, IVb, II, I };

inline const char* case_name(CaseTag t) {
  switch (t) {
    case CaseTag::VI: return "VI";
    case CaseTag::V: return "V";
    case CaseTag::IVa: return "IVa";
    case CaseTag::IVb: return "IVb";
    case CaseTag::II: return "II";
    case CaseTag::I: return "I";
  }
  return "?";
}

inline std::optional<CaseTag> case_from_name(const std::string& s) {
  if (s == "VI") return CaseTag::VI;
  if (s == "V") return CaseTag::V;
  if (s == "IVa") return CaseTag::IVa;
  if (s == "IVb") return CaseTag::IVb;
  if (s == "II") return CaseTag::II;
  if (s == "I") return CaseTag::I;
  return std::nullopt;
}

constexpr std::array<CaseTag, 6> all_cases{CaseTag::VI,  CaseTag::V,  CaseTag::IVa,
                                           CaseTag::IVb, CaseTag::II, CaseTag::I};

struct CaseInfo {
  int d0;                         // multiplicity of {0} in D (0 or 1)
  int m_inf;                      // pole order at infinity (2 or 3)
  std::vector<int> ram_profile;   // ramification profile at infinity
  int n_a;                        // number of independent a parameters
  bool has_c;
  bool has_tau;
  const char* twist;
};

inline const CaseInfo& case_info(CaseTag t) {
  static const CaseInfo VI{1, 2, {1, 1, 1}, 3, false, true, "untwisted"};
  static const CaseInfo V{1, 2, {2, 1}, 2, false, true, "minimally twisted"};
  static const CaseInfo IVa{1, 2, {3}, 1, false, true, "maximally twisted"};
  static const CaseInfo IVb{0, 3, {1, 1, 1}, 3, true, false, "untwisted"};
  static const CaseInfo II{0, 3, {2, 1}, 2, true, false, "minimally twisted"};
  static const CaseInfo I{0, 3, {3}, 1, true, false, "maximally twisted"};
  switch (t) {
    case CaseTag::VI: return VI;
    case CaseTag::V: return V;
    case CaseTag::IVa: return IVa;
    case CaseTag::IVb: return IVb;
    case CaseTag::II: return II;
    case CaseTag::I: return I;
  }
  throw std::logic_error("case_info");
}

struct JKTParams {
  CaseTag tag = CaseTag::VI;
  std::vector<Rational> a;    // n_a entries
  std::vector<Rational> b;    // 3 entries
  std::vector<Rational> c;    // 3 entries when has_c
  std::vector<Rational> tau;  // 3 entries when has_tau
};

struct Violation {
  std::string code;
  std::string message;
};

struct validation_error : std::runtime_error {
  std::vector<Violation> violations;
  explicit validation_error(std::vector<Violation> v)
      : std::runtime_error(v.empty() ? "invalid parameters"
                                     : ("invalid parameters: " + v.front().code)),
        violations(std::move(v)) {}
};

// Itemized constraint check against the normal forms. Empty result == valid.
inline std::vector<Violation> check_params(const JKTParams& p) {
  std::vector<Violation> out;
  const CaseInfo& ci = case_info(p.tag);
  auto shape = [&](bool ok, const std::string& what) {
    if (!ok) out.push_back({"param-shape", what});
  };
  shape((int)p.a.size() == ci.n_a, "a must have " + std::to_string(ci.n_a) + " entries");
  shape(p.b.size() == 3, "b must have 3 entries");
  shape(ci.has_c ? p.c.size() == 3 : p.c.empty(), ci.has_c ? "c must have 3 entries" : "no c for this case");
  shape(ci.has_tau ? p.tau.size() == 3 : p.tau.empty(),
        ci.has_tau ? "tau must have 3 entries" : "no tau for this case");
  if (!out.empty()) return out;

  Rational sum_tau = ci.has_tau ? p.tau[0] + p.tau[1] + p.tau[2] : Rational(0);
  switch (p.tag) {
    case CaseTag::VI:
      if (p.a[0] == p.a[1] || p.a[0] == p.a[2] || p.a[1] == p.a[2])
        out.push_back({"a-distinct", "leading-term eigenvalues a_i must be mutually different"});
      if (p.b[0] + p.b[1] + p.b[2] != sum_tau)
        out.push_back({"residue-sum", "b0+b1+b2 must equal tau0+tau1+tau2"});
      break;
    case CaseTag::V:
      if (p.a[0] == p.a[1])
        out.push_back({"a-distinct", "a0 and a1 must be different"});
      if (p.b[0] == 0) out.push_back({"b0-zero", "b0 must be nonzero"});
      if (p.b[1] + p.b[2] != sum_tau)
        out.push_back({"residue-sum", "b1+b2 must equal tau0+tau1+tau2"});
      break;
    case CaseTag::IVa:
      if (p.b[2] != sum_tau)
        out.push_back({"residue-sum", "b2 must equal tau0+tau1+tau2"});
      break;
    case CaseTag::IVb:
      if (p.a[0] == p.a[1] || p.a[0] == p.a[2] || p.a[1] == p.a[2])
        out.push_back({"a-distinct", "leading-term eigenvalues a_i must be mutually different"});
      if (p.c[0] + p.c[1] + p.c[2] != 0)
        out.push_back({"residue-sum", "c0+c1+c2 must vanish"});
      break;
    case CaseTag::II:
      if (p.a[0] == p.a[1])
        out.push_back({"a-distinct", "a0 and a1 must be different"});
      if (p.c[1] + p.c[2] != 0) out.push_back({"residue-sum", "c1+c2 must vanish"});
      break;
    case CaseTag::I:
      break;
  }
  return out;
}

// Validated polar data: matrices[k] is the coefficient of w^{-(m_inf - k)},
// i.e. matrices[0] is the leading coefficient.
struct PolarPresentation {
  CaseTag tag = CaseTag::VI;
  std::vector<QMat3> matrices;
  std::vector<Rational> tau;  // residue eigenvalues at 0 when D = {0} + 2{inf}
};

inline PolarPresentation validate(const JKTParams& p) {
  auto v = check_params(p);
  if (!v.empty()) throw validation_error(std::move(v));
  PolarPresentation pp;
  pp.tag = p.tag;
  pp.tau = p.tau;
  const Rational one(1), zero(0);
  auto& a = p.a;
  auto& b = p.b;
  switch (p.tag) {
    case CaseTag::VI: {
      pp.matrices.push_back(QMat3::diag(a[0], a[1], a[2]));
      pp.matrices.push_back(QMat3::diag(b[0], b[1], b[2]));
      break;
    }
    case CaseTag::V: {
      QMat3 A = QMat3::diag(a[0], a[0], a[1]);
      A(0, 1) = one;
      QMat3 B = QMat3::zero();
      B(1, 0) = b[0];
      B(1, 1) = b[1];
      B(2, 2) = b[2];
      pp.matrices = {A, B};
      break;
    }
    case CaseTag::IVa: {
      QMat3 A = QMat3::diag(a[0], a[0], a[0]);
      A(0, 1) = one;
      A(1, 2) = one;
      QMat3 B = QMat3::zero();
      B(2, 0) = b[0];
      B(2, 1) = b[1];
      B(2, 2) = b[2];
      pp.matrices = {A, B};
      break;
    }
    case CaseTag::IVb: {
      pp.matrices.push_back(QMat3::diag(a[0], a[1], a[2]));
      pp.matrices.push_back(QMat3::diag(b[0], b[1], b[2]));
      pp.matrices.push_back(QMat3::diag(p.c[0], p.c[1], p.c[2]));
      break;
    }
    case CaseTag::II: {
      QMat3 A = QMat3::diag(a[0], a[0], a[1]);
      A(0, 1) = one;
      QMat3 B = QMat3::zero();
      B(1, 0) = b[0];
      B(1, 1) = b[1];
      B(2, 2) = b[2];
      QMat3 C = QMat3::zero();
      C(1, 0) = p.c[0];
      C(1, 1) = p.c[1];
      C(2, 2) = p.c[2];
      pp.matrices = {A, B, C};
      break;
    }
    case CaseTag::I: {
      QMat3 A = QMat3::diag(a[0], a[0], a[0]);
      A(0, 1) = one;
      A(1, 2) = one;
      QMat3 B = QMat3::zero();
      B(2, 0) = b[0];
      B(2, 1) = b[1];
      B(2, 2) = b[2];
      QMat3 C = QMat3::zero();
      C(2, 0) = p.c[0];
      C(2, 1) = p.c[1];
      pp.matrices = {A, B, C};
      break;
    }
  }
  return pp;
}

// Characteristic data of the polar truncation at infinity, as polynomials in
// W = 1/w: returns (tr M, e2 M, det M) of M(W) = sum matrices[k] W^{m-k}.
struct PolarCharData {
  QPoly e1, e2, e3;  // in W = 1/w
};

inline PolarCharData polar_char_laurent(const PolarPresentation& pp) {
  int m = static_cast<int>(pp.matrices.size());
  QPolyMat3 M = QPolyMat3::zero();
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        M(i, j) += QPoly::monomial(pp.matrices[k](i, j), m - k);
  PolarCharData d;
  d.e1 = M.trace();
  d.e2 = M.e2();
  d.e3 = M.det();
  return d;
}

// Point of the Hitchin base: z-chart O(n)-representatives of the three
// characteristic coefficients, deg F <= 1, deg G <= 2, deg H <= 3.
struct HitchinPoint {
  QPoly F, G, H;
};

struct family_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Characteristic coefficients of an explicitly given z-chart polynomial Higgs
// matrix (used as a test oracle; the family construction itself never builds
// matrix completions). Degree bounds are enforced.
inline HitchinPoint char_coefficients(const QPolyMat3& theta) {
  HitchinPoint h;
  h.F = -theta.trace();
  h.G = theta.e2();
  h.H = -theta.det();
  if (h.F.degree() > 1 || h.G.degree() > 2 || h.H.degree() > 3)
    throw family_error("char_coefficients: degree bound violated by completion");
  return h;
}

struct HitchinFamily {
  HitchinPoint base;
  HitchinPoint direction;  // nonzero; the family is base + t * direction
  int rank = 0;            // rank of the constraint system (must be 8)
};

namespace detail {

inline void hp_set(HitchinPoint& h, int idx, const Rational& v) {
  // global unknown order: f0 f1 | g0 g1 g2 | h0 h1 h2 h3
  if (idx <= 1)
    h.F.set_coeff(idx, v);
  else if (idx <= 4)
    h.G.set_coeff(idx - 2, v);
  else
    h.H.set_coeff(idx - 5, v);
}

}  // namespace detail

// The affine line of characteristic coefficients compatible with the fixed
// polar data. The constraint system must have corank exactly 1 in the
// 9-dimensional Hitchin base.
inline HitchinFamily hitchin_family(const PolarPresentation& pp) {
  const CaseInfo& ci = case_info(pp.tag);
  int m = ci.m_inf;
  PolarCharData pc = polar_char_laurent(pp);
  const QPoly* E[3] = {&pc.e1, &pc.e2, &pc.e3};
  const int sign[3] = {-1, +1, -1};  // F = -e1, G = +e2, H = -e3
  const int offset[3] = {0, 2, 5};

  // rows: 9 coefficients + rhs
  std::vector<std::array<Rational, 10>> rows;
  auto add_row = [&](std::array<Rational, 10> r) { rows.push_back(std::move(r)); };

  for (int n = 1; n <= 3; ++n) {
    // matching at infinity for W-exponents j in [(n-1)m+1, nm]
    for (int j = (n - 1) * m + 1; j <= n * m; ++j) {
      Rational rhs = Rational(sign[n - 1]) * E[n - 1]->coeff(j);
      int d = n - n * m + j;
      std::array<Rational, 10> r{};
      if (d >= 0 && d <= n) r[offset[n - 1] + d] = Rational(1);
      r[9] = rhs;
      add_row(std::move(r));
    }
    // residue matching at 0 for D = {0} + 2{inf}
    if (ci.d0 == 1) {
      Rational e1t = pp.tau[0] + pp.tau[1] + pp.tau[2];
      Rational e2t = pp.tau[0] * pp.tau[1] + pp.tau[0] * pp.tau[2] + pp.tau[1] * pp.tau[2];
      Rational e3t = pp.tau[0] * pp.tau[1] * pp.tau[2];
      Rational rhs = n == 1 ? -e1t : (n == 2 ? e2t : -e3t);
      std::array<Rational, 10> r{};
      r[offset[n - 1] + 0] = Rational(1);
      r[9] = rhs;
      add_row(std::move(r));
    }
  }

  // Gaussian elimination over Q
  int nrows = static_cast<int>(rows.size());
  int rank = 0;
  std::vector<int> pivot_col;
  for (int col = 0; col < 9 && rank < nrows; ++col) {
    int piv = -1;
    for (int r = rank; r < nrows; ++r)
      if (rows[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    Rational inv = Rational(1) / rows[rank][col];
    for (int c = col; c < 10; ++c) rows[rank][c] *= inv;
    for (int r = 0; r < nrows; ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      Rational f = rows[r][col];
      for (int c = col; c < 10; ++c) rows[r][c] -= f * rows[rank][c];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  // consistency: no row 0 = nonzero
  for (int r = rank; r < nrows; ++r)
    if (rows[r][9] != 0)
      throw family_error("hitchin_family: inconsistent constraints (invalid polar data?)");
  if (rank != 8)
    throw family_error("hitchin_family: constraint rank " + std::to_string(rank) +
                       ", expected 8 (corank 1)");

  // particular solution: free columns = 0
  std::vector<Rational> x(9, Rational(0));
  for (int r = 0; r < rank; ++r) x[pivot_col[r]] = rows[r][9];
  // kernel generator: the single free column
  std::vector<bool> is_pivot(9, false);
  for (int c : pivot_col) is_pivot[c] = true;
  int free_col = -1;
  for (int c = 0; c < 9; ++c)
    if (!is_pivot[c]) free_col = c;
  std::vector<Rational> k(9, Rational(0));
  k[free_col] = Rational(1);
  for (int r = 0; r < rank; ++r) k[pivot_col[r]] = -rows[r][free_col];

  HitchinFamily fam;
  fam.rank = rank;
  for (int i = 0; i < 9; ++i) {
    detail::hp_set(fam.base, i, x[i]);
    detail::hp_set(fam.direction, i, k[i]);
  }
  if (fam.direction.F.is_zero() && fam.direction.G.is_zero() && fam.direction.H.is_zero())
    throw family_error("hitchin_family: zero direction");
  return fam;
}

inline HitchinPoint family_member(const HitchinFamily& fam, const Rational& t) {
  HitchinPoint h;
  h.F = fam.base.F + t * fam.direction.F;
  h.G = fam.base.G + t * fam.direction.G;
  h.H = fam.base.H + t * fam.direction.H;
  return h;
}

// ---- small auxiliary formulas ----------------------------------------------

// Simpson's correspondence between Dolbeault and de Rham residue data:
// alpha = Re mu, nu = (mu - beta)/2.
inline std::pair<double, ApproxComplex> simpson_map(const ApproxComplex& mu, double beta) {
  ApproxComplex nu((mu.value - std::complex<double>(beta, 0.0)) / 2.0, mu.tol);
  return {mu.re(), nu};
}

// Parabolic degree of a bundle: deg + sum of all weights. Weight lists must be
// strictly increasing inside [0, 1).
inline Rational parabolic_degree(long long deg,
                                 const std::map<std::string, std::vector<Rational>>& weights) {
  Rational r(deg);
  for (auto& [pt, ws] : weights) {
    Rational prev(-1);
    for (auto& w : ws) {
      if (w < 0 || w >= 1 || w <= prev)
        throw std::invalid_argument("parabolic_degree: weights must satisfy 0 <= a1 < a2 < ... < 1");
      prev = w;
      r += w;
    }
  }
  return r;
}

// Subbundle variant: each weight enters with the dimension of the associated
// graded piece cut out by the subbundle.
inline Rational parabolic_degree_sub(
    long long deg, const std::map<std::string, std::vector<std::pair<Rational, int>>>& weighted_dims) {
  Rational r(deg);
  for (auto& [pt, ws] : weighted_dims) {
    Rational prev(-1);
    for (auto& [w, dim] : ws) {
      if (w < 0 || w >= 1 || w <= prev)
        throw std::invalid_argument("parabolic_degree: weights must satisfy 0 <= a1 < a2 < ... < 1");
      if (dim < 0) throw std::invalid_argument("parabolic_degree: negative dimension");
      prev = w;
      r += w * Rational(dim);
    }
  }
  return r;
}

}  // namespace jkt

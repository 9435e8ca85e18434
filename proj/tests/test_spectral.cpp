#include <catch2/catch_amalgamated.hpp>

#include "jkt/sampler.hpp"
#include "jkt/spectral.hpp"

using namespace jkt;

namespace {
SpectralPoly member(CaseTag tag, uint64_t seed, Rational t) {
  ParamSampler s;
  JKTParams p = s.draw(tag, seed);
  HitchinFamily fam = hitchin_family(validate(p));
  return spectral_poly(family_member(fam, t), tag);
}
}  // namespace

TEST_CASE("spectral polynomial basics and chart round trip") {
  HitchinPoint h;
  h.H = QPoly{Rational(0), Rational(-1)};  // H = -z, so the curve is eta^3 = z
  SpectralPoly sp = spectral_poly(h, CaseTag::IVb);
  QBiPoly expect = QBiPoly::monomial(Rational(1), 3, 0) - QBiPoly::var_z();
  REQUIRE(sp.P == expect);

  ParamSampler s;
  for (auto tag : all_cases)
    for (uint64_t seed = 1; seed <= 4; ++seed) {
      SpectralPoly m = member(tag, seed, s.draw_t(tag, seed));
      SpectralPoly rt = chart_change(chart_change(m));
      REQUIRE(rt.P == m.P);
      REQUIRE(rt.chart == m.chart);
    }
}

TEST_CASE("monicity and infinity_disjoint") {
  ParamSampler s;
  for (auto tag : all_cases) {
    SpectralPoly m = member(tag, 5, s.draw_t(tag, 5));
    REQUIRE(infinity_disjoint(m));
  }
  // artificially scaled non-monic input
  HitchinPoint h;
  h.H = QPoly{Rational(1)};
  SpectralPoly sp = spectral_poly(h, CaseTag::IVb);
  sp.P = Rational(2) * sp.P;
  REQUIRE(!infinity_disjoint(sp));
  // homogenization/dehomogenization round trip preserves the check
  REQUIRE(!infinity_disjoint(chart_change(sp)));
}

TEST_CASE("JKTVI: three unramified branches with exact normal forms") {
  ParamSampler s;
  JKTParams p = s.draw(CaseTag::VI, 3);
  HitchinFamily fam = hitchin_family(validate(p));
  SpectralPoly sp = spectral_poly(family_member(fam, s.draw_t(CaseTag::VI, 3)), CaseTag::VI);

  BranchData bd = eigenvalue_puiseux(sp, CaseTag::VI, true);
  REQUIRE(bd.profile == std::vector<int>{1, 1, 1});
  REQUIRE(bd.ramification_contribution == 0);
  // (1/2) q_i = -a_i w^{-1} exactly, residue eigenvalues b_i
  std::vector<Rational> seen_a, seen_b;
  for (auto& hq : bd.half_q) {
    REQUIRE(hq.exact.has_value());
    REQUIRE(hq.exact->size() == 1);
    REQUIRE(hq.exact->count(-1) == 1);
    REQUIRE(hq.residue_exact.has_value());
    seen_a.push_back(-hq.exact->at(-1));
    seen_b.push_back(*hq.residue_exact);
  }
  for (int i = 0; i < 3; ++i) {
    bool found = false;
    for (int j = 0; j < 3; ++j)
      if (seen_a[j] == p.a[i] && seen_b[j] == p.b[i]) found = true;
    REQUIRE(found);
  }

  // residue eigenvalues at the regular point 0 equal tau_i
  BranchData b0 = eigenvalue_puiseux(sp, CaseTag::VI, false);
  REQUIRE(b0.profile == std::vector<int>{1, 1, 1});
  std::vector<Rational> res0;
  for (auto& hq : b0.half_q) {
    REQUIRE(hq.residue_exact.has_value());
    res0.push_back(*hq.residue_exact);
  }
  std::sort(res0.begin(), res0.end());
  std::vector<Rational> tau = p.tau;
  std::sort(tau.begin(), tau.end());
  REQUIRE(res0 == tau);
}

TEST_CASE("JKTIVb: exact forms -b_i w^-1 - (1/2) a_i w^-2 with residues c_i") {
  ParamSampler s;
  JKTParams p = s.draw(CaseTag::IVb, 7);
  HitchinFamily fam = hitchin_family(validate(p));
  SpectralPoly sp = spectral_poly(family_member(fam, s.draw_t(CaseTag::IVb, 7)), CaseTag::IVb);
  BranchData bd = eigenvalue_puiseux(sp, CaseTag::IVb, true);
  REQUIRE(bd.profile == std::vector<int>{1, 1, 1});
  for (int i = 0; i < 3; ++i) {
    bool found = false;
    for (auto& hq : bd.half_q) {
      if (!hq.exact) continue;
      if (hq.exact->count(-2) && hq.exact->at(-2) == -p.a[i] / 2 && hq.exact->count(-1) &&
          hq.exact->at(-1) == -p.b[i] && hq.residue_exact == p.c[i])
        found = true;
    }
    REQUIRE(found);
  }
}

TEST_CASE("JKTV: profile (2,1); unramified branch -a1 w^-1; pair tail -a0 w^-1 exact") {
  ParamSampler s;
  JKTParams p = s.draw(CaseTag::V, 11);
  HitchinFamily fam = hitchin_family(validate(p));
  SpectralPoly sp = spectral_poly(family_member(fam, s.draw_t(CaseTag::V, 11)), CaseTag::V);
  BranchData bd = eigenvalue_puiseux(sp, CaseTag::V, true);
  REQUIRE(bd.profile == std::vector<int>{2, 1});
  REQUIRE(bd.ramification_contribution == 1);
  for (size_t i = 0; i < bd.branches.size(); ++i) {
    auto& b = bd.branches[i];
    auto& hq = bd.half_q[i];
    if (b.ram == 1) {
      REQUIRE(hq.exact.has_value());
      REQUIRE(hq.exact->at(-1) == -p.a[1]);
      REQUIRE(hq.residue_exact == p.b[2]);
    } else {
      // tail -a0 w^-1 exact; fractional leading coefficient lambda2 with
      // lambda2^2 = 4 b0 (validated numerically; the paper fixes only its
      // dependence on the parameters)
      REQUIRE(hq.exact.has_value());
      REQUIRE(hq.exact->at(-2) == -p.a[0]);  // exponent -2 in 1/2-units = w^{-1}
      REQUIRE(hq.terms.count(-1) == 1);
      std::complex<double> l2 = hq.terms.at(-1).value;
      REQUIRE(std::abs(l2 * l2 - std::complex<double>(4 * to_double(p.b[0]), 0)) < 1e-6);
    }
  }
}

TEST_CASE("JKTIVa: single e=3 branch class with exact integer tail") {
  ParamSampler s;
  JKTParams p = s.draw(CaseTag::IVa, 13);
  HitchinFamily fam = hitchin_family(validate(p));
  SpectralPoly sp = spectral_poly(family_member(fam, s.draw_t(CaseTag::IVa, 13)), CaseTag::IVa);
  BranchData bd = eigenvalue_puiseux(sp, CaseTag::IVa, true);
  REQUIRE(bd.profile == std::vector<int>{3});
  REQUIRE(bd.ramification_contribution == 2);
  auto& hq = bd.half_q[0];
  // exponents -1/3, -2/3, -1 in 1/3-units: keys -1, -2, -3
  REQUIRE(hq.exact.has_value());
  REQUIRE(hq.exact->at(-3) == -p.a[0]);
  REQUIRE(hq.terms.count(-1) == 1);
  REQUIRE(hq.terms.count(-2) == 1);
}

TEST_CASE("JKTII: profile (2,1) with exact unramified branch and -1/2 a0 w^-2 tail") {
  ParamSampler s;
  JKTParams p = s.draw(CaseTag::II, 17);
  HitchinFamily fam = hitchin_family(validate(p));
  SpectralPoly sp = spectral_poly(family_member(fam, s.draw_t(CaseTag::II, 17)), CaseTag::II);
  BranchData bd = eigenvalue_puiseux(sp, CaseTag::II, true);
  REQUIRE(bd.profile == std::vector<int>{2, 1});
  for (size_t i = 0; i < bd.branches.size(); ++i) {
    auto& b = bd.branches[i];
    auto& hq = bd.half_q[i];
    if (b.ram == 1) {
      REQUIRE(hq.exact.has_value());
      REQUIRE(hq.exact->at(-1) == -p.b[2]);
      REQUIRE(hq.exact->at(-2) == -p.a[1] / 2);
      REQUIRE(hq.residue_exact == p.c[2]);
    } else {
      REQUIRE(hq.exact.has_value());
      REQUIRE(hq.exact->at(-4) == -p.a[0] / 2);  // w^{-2} in 1/2-units
    }
  }
}

TEST_CASE("JKTI: single e=3 branch class, tail -1/2 a0 w^-2") {
  ParamSampler s;
  JKTParams p = s.draw(CaseTag::I, 19);
  HitchinFamily fam = hitchin_family(validate(p));
  SpectralPoly sp = spectral_poly(family_member(fam, s.draw_t(CaseTag::I, 19)), CaseTag::I);
  BranchData bd = eigenvalue_puiseux(sp, CaseTag::I, true);
  REQUIRE(bd.profile == std::vector<int>{3});
  auto& hq = bd.half_q[0];
  REQUIRE(hq.exact.has_value());
  REQUIRE(hq.exact->at(-6) == -p.a[0] / 2);  // w^{-2} in 1/3-units
  // fractional ladder -1/3 ... -5/3 present (1/3-unit keys -1,-2,-4,-5)
  REQUIRE(hq.terms.count(-1) == 1);
  REQUIRE(hq.terms.count(-2) == 1);
}

TEST_CASE("branch back-substitution residuals stay within tolerance") {
  ParamSampler s;
  for (auto tag : all_cases) {
    JKTParams p = s.draw(tag, 23);
    HitchinFamily fam = hitchin_family(validate(p));
    SpectralPoly sp = spectral_poly(family_member(fam, s.draw_t(tag, 23)), tag);
    SpectralPoly spw = chart_change(sp);
    BranchData bd = eigenvalue_puiseux(sp, tag, true);
    for (auto& b : bd.branches) REQUIRE(back_substitution_residual(spw.P, b) < 1e-6);
  }
}

TEST_CASE("family perturbation keeps all polar data fixed") {
  ParamSampler s;
  for (auto tag : all_cases) {
    JKTParams p = s.draw(tag, 29);
    HitchinFamily fam = hitchin_family(validate(p));
    SpectralPoly m1 = spectral_poly(family_member(fam, Rational(1, 3)), tag);
    SpectralPoly m2 = spectral_poly(family_member(fam, Rational(7, 2)), tag);
    BranchData b1 = eigenvalue_puiseux(m1, tag, true);
    BranchData b2 = eigenvalue_puiseux(m2, tag, true);
    REQUIRE(b1.profile == b2.profile);
    // principal parts agree branch-by-branch (match by center)
    for (size_t i = 0; i < b1.half_q.size(); ++i) {
      bool matched = false;
      for (size_t j = 0; j < b2.half_q.size(); ++j) {
        if (b1.branches[i].ram != b2.branches[j].ram) continue;
        bool same = true;
        for (auto& [k, v] : b1.half_q[i].terms) {
          if (!b2.half_q[j].terms.count(k)) {
            same = false;
            break;
          }
          auto w = b2.half_q[j].terms.at(k);
          // tie branches of a conjugate pair together up to the sheet choice:
          // compare |coefficients| for fractional exponents, values for integer
          bool integer_exp = (k % b1.branches[i].ram) == 0;
          if (integer_exp ? !(ApproxComplex(v.value, 1e-7).near(w.value))
                          : std::abs(std::abs(v.value) - std::abs(w.value)) > 1e-7)
            same = false;
        }
        if (same) matched = true;
      }
      REQUIRE(matched);
    }
  }
}

TEST_CASE("smoothness: cusp test input is singular, generic members smooth") {
  // y^2 - z^3 embedded as a degenerate "rank 2" cubic-free input
  SpectralPoly cusp;
  cusp.rank = 2;
  cusp.P = QBiPoly::monomial(Rational(1), 2, 0) - QBiPoly::monomial(Rational(1), 0, 3);
  SmoothnessReport rep;
  rep.smooth = true;
  detail::affine_singular_scan(cusp.P, Chart::z_chart, rep, 1e-9);
  REQUIRE(!rep.smooth);
  REQUIRE(!rep.witnesses.empty());
  REQUIRE(rep.witnesses[0].exact);
  REQUIRE(rep.witnesses[0].base.near_zero());
  REQUIRE(rep.witnesses[0].fiber.near_zero());

  ParamSampler s;
  for (auto tag : all_cases)
    for (uint64_t seed = 31; seed <= 34; ++seed) {
      SpectralPoly m = member(tag, seed, s.draw_t(tag, seed));
      REQUIRE(smoothness_check(m, tag).smooth);
    }
}

TEST_CASE("ramification length is 6 and genus 1 in all cases") {
  ParamSampler s;
  for (auto tag : all_cases) {
    SpectralPoly m = member(tag, 37, s.draw_t(tag, 37));
    RamificationData rd = ramification_length(m, tag);
    REQUIRE(rd.total == 6);
    const CaseInfo& ci = case_info(tag);
    int expected_inf = 0;
    for (int e : ci.ram_profile) expected_inf += e - 1;
    REQUIRE(rd.at_infinity == expected_inf);
    REQUIRE(rd.finite == 6 - expected_inf);
    EulerGenus eg = euler_genus(m, tag);
    REQUIRE(eg.euler == 0);
    REQUIRE(eg.genus == 1);
  }
}

TEST_CASE("classical elliptic curve via the same count: y^2 = z^3 - z") {
  // rank-2 cover with 4 finite branch points and none at infinity in this model
  SpectralPoly sp;
  sp.rank = 2;
  sp.P = QBiPoly::monomial(Rational(1), 2, 0) - QBiPoly::monomial(Rational(1), 0, 3) +
         QBiPoly::var_z();
  QPoly disc = resultant_x(sp.P, sp.P.deriv_x());
  REQUIRE(disc.degree() == 3);
  // Euler characteristic = 2*2 - length(Delta); the double cover ramifies over
  // the three finite roots and over infinity: 2*2 - 4 = 0, genus 1
  int length = disc.degree() + 1;
  REQUIRE(2 * 2 - length == 0);
}

TEST_CASE("degenerate member found by sweeping the family is singular, with witness") {
  ParamSampler s;
  JKTParams p = s.draw(CaseTag::VI, 41);
  HitchinFamily fam = hitchin_family(validate(p));
  QPoly R = family_discriminant(fam, CaseTag::VI);
  REQUIRE(!R.is_zero());
  REQUIRE(R.degree() >= 1);  // the family does contain degenerate members
  auto w = singular_member_witness(fam, CaseTag::VI, 1e-5);
  REQUIRE(w.has_value());
  // and generic rational t away from the roots of R stays smooth
  Rational t = s.draw_t(CaseTag::VI, 41);
  if (R.eval(t) != 0) {
    SpectralPoly m = spectral_poly(family_member(fam, t), CaseTag::VI);
    REQUIRE(smoothness_check(m, CaseTag::VI).smooth);
  }
}

TEST_CASE("newton polygon of the JKTI w-chart curve forces ramification three") {
  // hand-computed support oracle for one rational parameter set: after
  // translating the triple eigenvalue to the origin the lower hull has a
  // single segment of slope 1/3 and length 3
  JKTParams p;
  p.tag = CaseTag::I;
  p.a = {Rational(3)};
  p.b = {Rational(1), Rational(2), Rational(-1)};
  p.c = {Rational(2), Rational(1), Rational(5)};
  HitchinFamily fam = hitchin_family(validate(p));
  SpectralPoly spw = chart_change(spectral_poly(family_member(fam, Rational(1)), CaseTag::I));
  QBiPoly local = spw.P.translate(p.a[0], Rational(0));
  auto segs = newton_polygon(local);
  REQUIRE(segs.size() == 1);
  REQUIRE(segs[0].slope == Rational(1, 3));
  REQUIRE(segs[0].length == 3);
  // hence e = 3 and the (1/2)q ladder reaches w^{-2}, the deepest displayed term
  BranchData bd = eigenvalue_puiseux(spw, CaseTag::I, true);
  REQUIRE(bd.profile == std::vector<int>{3});
  REQUIRE(bd.half_q[0].exact->at(-6) == -p.a[0] / 2);
}

TEST_CASE("chart-change conjugation of eigenvalue branches") {
  // branches at a finite point computed in the z-chart, transported through
  // eta_w = w * eta_z, agree with branches computed directly in the w-chart
  ParamSampler s;
  for (auto tag : {CaseTag::VI, CaseTag::IVb, CaseTag::II}) {
    SpectralPoly sp = member(tag, 43, s.draw_t(tag, 43));
    SpectralPoly spw = chart_change(sp);
    Rational z0(2);
    Rational w0 = Rational(1) / z0;
    auto bz = newton_puiseux_at(sp.P, z0, 4);
    auto bw = newton_puiseux_at(spw.P, w0, 4);
    REQUIRE(bz.size() == 3);
    REQUIRE(bw.size() == 3);
    // evaluate both expansions at a nearby sample point and compare values
    double dz = 1e-3;
    double zs = to_double(z0) + dz;
    double ws = 1.0 / zs;
    double dw = ws - to_double(w0);
    for (auto& b1 : bz) {
      std::complex<double> etaz = 0;
      for (auto& [k, v] : b1.terms) etaz += v.value * std::pow(dz, k);
      std::complex<double> expect = ws * etaz;  // eta_w = w * eta_z
      bool matched = false;
      for (auto& b2 : bw) {
        std::complex<double> etaw = 0;
        for (auto& [k, v] : b2.terms) etaw += v.value * std::pow(dw, k);
        if (std::abs(etaw - expect) < 1e-6 * (1.0 + std::abs(expect))) matched = true;
      }
      REQUIRE(matched);
    }
  }
}

TEST_CASE("fifty seeds per case: the family base point carries the fixed polar data") {
  ParamSampler s;
  for (auto tag : all_cases) {
    const CaseInfo& ci = case_info(tag);
    for (uint64_t seed = 100; seed < 150; ++seed) {
      JKTParams p = s.draw(tag, seed);
      HitchinFamily fam = hitchin_family(validate(p));
      SpectralPoly sp = spectral_poly(fam.base, tag);
      BranchData bd;
      try {
        bd = eigenvalue_puiseux(sp, tag, true, ci.m_inf + 2);
      } catch (const puiseux_error&) {
        // the base point itself may be a degenerate member; skip, the profile
        // checks run on generic members elsewhere
        continue;
      }
      REQUIRE(bd.profile == ci.ram_profile);
      // leading exact data: eigenvalues of the leading polar matrix appear as
      // branch centers
      std::vector<Rational> centers;
      for (auto& b : bd.branches)
        if (b.exact_center) centers.push_back(*b.exact_center);
      for (auto& b : bd.branches) REQUIRE(b.exact_center.has_value());
      std::sort(centers.begin(), centers.end());
      std::vector<Rational> expect;
      if (ci.ram_profile.size() == 3)
        expect = {p.a[0], p.a[1], p.a[2]};
      else if (ci.ram_profile.size() == 2)
        expect = {p.a[0], p.a[1]};
      else
        expect = {p.a[0]};
      std::sort(expect.begin(), expect.end());
      REQUIRE(centers == expect);
    }
  }
}

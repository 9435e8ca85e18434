#include <catch2/catch_amalgamated.hpp>

#include "jkt/pipeline.hpp"

using namespace jkt;

namespace {
SpectralPoly member(CaseTag tag, uint64_t seed) {
  ParamSampler s;
  JKTParams p = s.draw(tag, seed);
  HitchinFamily fam = hitchin_family(validate(p));
  return spectral_poly(family_member(fam, s.draw_t(tag, seed)), tag);
}
}  // namespace

TEST_CASE("base locus profiles match the per-case recipes") {
  struct Expect {
    CaseTag tag;
    std::vector<int> mults;
  };
  std::vector<Expect> expects = {
      {CaseTag::VI, {1, 1, 1, 2, 2, 2}}, {CaseTag::V, {1, 1, 1, 2, 4}},
      {CaseTag::IVa, {1, 1, 1, 6}},      {CaseTag::IVb, {3, 3, 3}},
      {CaseTag::II, {3, 6}},             {CaseTag::I, {9}},
  };
  for (auto& e : expects) {
    SpectralPoly sp = member(e.tag, 2);
    auto bps = base_locus(primal_pencil_config(sp));
    std::vector<int> mults;
    int total = 0;
    for (auto& bp : bps) {
      mults.push_back(bp.intersection_multiplicity);
      total += bp.intersection_multiplicity;
    }
    std::sort(mults.begin(), mults.end());
    REQUIRE(total == 9);
    REQUIRE(mults == e.mults);
  }
}

TEST_CASE("resolution: nine blow-ups, lattice stage invariants, depth profiles") {
  for (auto tag : all_cases) {
    SpectralPoly sp = member(tag, 3);
    ResolutionResult R = resolve_base_locus(primal_pencil_config(sp));
    REQUIRE(R.n_blowups == 9);
    REQUIRE(R.tower_depths == expected_depth_profile(tag));
    for (auto& cp : R.checkpoints) {
      REQUIRE(cp.rank == 2 + cp.blowups);
      REQUIRE(cp.K2 == 8 - cp.blowups);
      REQUIRE(cp.pencil2 == 9 - cp.blowups);
    }
    REQUIRE(R.blown_down);
    REQUIRE(R.lat.rank() == 10);
    REQUIRE(R.lat.unimodular());
    REQUIRE(R.lat.self(R.K) == 0);
    REQUIRE(R.lat.self(R.pencil_class) == 0);
    REQUIRE(verify_anticanonical(R));
  }
}

TEST_CASE("pre-blow-down anticanonical identity on the rank-11 lattice") {
  SpectralPoly sp = member(CaseTag::IVb, 5);
  PencilConfig cfg = primal_pencil_config(sp);
  cfg.blow_down_sigma = false;
  ResolutionResult R = resolve_base_locus(cfg);
  REQUIRE(R.lat.rank() == 11);
  REQUIRE(verify_anticanonical(R));
  REQUIRE(R.lat.self(R.K) == -1);
  DivisorClass sigma = dc_zero(11);
  sigma[0] = 1;
  REQUIRE(R.lat.self(sigma) == -1);
  DivisorClass F = dc_zero(11);
  F[1] = 1;
  REQUIRE(R.lat.self(F + sigma) == 1);
  for (int k = 0; k < 9; ++k) {
    DivisorClass E = dc_zero(11);
    E[2 + k] = 1;
    REQUIRE(R.lat.pair(E, sigma) == 0);
  }
}

TEST_CASE("fiber at infinity: components, multiplicities, Dynkin labels") {
  struct Expect {
    CaseTag tag;
    const char* kodaira;
    const char* dynkin;
    int n_components;
  };
  std::vector<Expect> expects = {
      {CaseTag::VI, "I0*", "D4~", 5},  {CaseTag::V, "I1*", "D5~", 6},
      {CaseTag::IVa, "IV*", "E6~", 7}, {CaseTag::IVb, "IV*", "E6~", 7},
      {CaseTag::II, "III*", "E7~", 8}, {CaseTag::I, "II*", "E8~", 9},
  };
  for (auto& e : expects) {
    SpectralPoly sp = member(e.tag, 7);
    PencilAnalysis pa = analyze_primal(sp, e.tag);
    REQUIRE(pa.fiber.components.size() == (size_t)e.n_components);
    REQUIRE(pa.label.kodaira == e.kodaira);
    REQUIRE(pa.label.dynkin == e.dynkin);
    REQUIRE(pa.fiber.k + pa.fiber.l == 9);
    REQUIRE(pa.res.lat.pair(pa.res.pencil_class, pa.res.c1_proper) == 0);
    for (auto& c : pa.fiber.components)
      REQUIRE(pa.res.lat.pair(c.cls, pa.res.c1_proper) == 0);
    REQUIRE(member_disjoint_from_components(pa.res));
  }
}

TEST_CASE("class equations: unique solution, satisfied by [F_inf] and [Sigma~]") {
  for (auto tag : all_cases) {
    SpectralPoly sp = member(tag, 11);
    PencilAnalysis pa = analyze_primal(sp, tag);
    auto rep1 = verify_class_equations(pa.res, pa.fiber, pa.res.pencil_class);
    REQUIRE(rep1.gram_unimodular);
    REQUIRE(rep1.satisfied);
    auto rep2 = verify_class_equations(pa.res, pa.fiber, pa.res.c1_proper);
    REQUIRE(rep2.satisfied);
    int ref = -1;
    for (int i = 0; i < (int)pa.res.cfg.fibers.size(); ++i)
      if (pa.res.cfg.fibers[i].at_infinity) ref = i;
    auto rep3 = verify_class_equations(pa.res, pa.fiber, pa.res.fiber_class[ref]);
    REQUIRE(!rep3.satisfied);
    REQUIRE(pencil_dimension(pa.res, pa.fiber) == 1);
  }
}

TEST_CASE("labels are invariant across seeds and component order") {
  for (auto tag : all_cases) {
    DynkinLabel first{};
    for (uint64_t seed = 21; seed <= 24; ++seed) {
      SpectralPoly sp = member(tag, seed);
      PencilAnalysis pa = analyze_primal(sp, tag);
      if (seed == 21)
        first = pa.label;
      else {
        REQUIRE(pa.label.kodaira == first.kodaira);
        REQUIRE(pa.label.dynkin == first.dynkin);
      }
      FiberConfiguration perm = pa.fiber;
      std::rotate(perm.components.begin(), perm.components.begin() + 1, perm.components.end());
      size_t m = perm.components.size();
      perm.adjacency.assign(m, std::vector<long long>(m, 0));
      for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
          perm.adjacency[i][j] = i == j ? perm.components[i].self_int
                                        : pa.res.lat.pair(perm.components[i].cls,
                                                          perm.components[j].cls);
      DynkinLabel lab2 = classify_dynkin(perm);
      REQUIRE(lab2.kodaira == first.kodaira);
    }
  }
}

TEST_CASE("cusp resolution self-test (randomized)") {
  uint64_t seed = 99;
  int runs = 0;
  for (int it = 0; it < 150 && runs < 105; ++it) {
    seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
    long long c = static_cast<long long>((seed >> 40) % 9) - 4;
    long long sc = 1 + static_cast<long long>((seed >> 20) % 5);
    QBiPoly y = QBiPoly::var_x(), z = QBiPoly::var_z();
    QBiPoly f =
        Rational(sc) * (y - QBiPoly(Rational(c))) * (y - QBiPoly(Rational(c))) -
        (z - QBiPoly(Rational(c))) * (z - QBiPoly(Rational(c))) * (z - QBiPoly(Rational(c)));
    CurveResolution cr = resolve_curve_singularity(f);
    REQUIRE(cr.steps.size() == 1);   // one blow-up leaves the proper transform smooth
    REQUIRE(cr.steps[0].mult == 2);  // proper transform class = pullback - 2E
    REQUIRE(cr.steps[0].x0 == Rational(c));
    REQUIRE(cr.steps[0].y0 == Rational(c));
    REQUIRE(cr.proper_smooth);
    ++runs;
  }
  REQUIRE(runs >= 100);
}

TEST_CASE("degenerate pencil input aborts with a structured report") {
  QBiPoly P = QBiPoly::monomial(Rational(1), 3, 0) - QBiPoly::monomial(Rational(1), 0, 3);
  PencilConfig cfg;
  cfg.curve = {P, 3, 1};
  cfg.fibers.push_back({true, Rational(0), 3});
  cfg.expected_blowups = 9;
  REQUIRE_THROWS_AS(resolve_base_locus(cfg), pencil_error);
}

TEST_CASE("VI fiber matches the hand-derived configuration") {
  // central component: the fiber over infinity with multiplicity two; tails:
  // the fiber over zero and the three first exceptionals of the infinity-side
  // towers, each reduced
  SpectralPoly sp = member(CaseTag::VI, 2);
  PencilAnalysis pa = analyze_primal(sp, CaseTag::VI);
  REQUIRE(pa.label.kodaira == "I0*");
  const FiberComponent* center = nullptr;
  int tails = 0;
  for (auto& c : pa.fiber.components) {
    if (c.mult == 2) {
      REQUIRE(center == nullptr);
      center = &c;
      REQUIRE(c.name == "F(inf)");
    } else {
      REQUIRE(c.mult == 1);
      ++tails;
    }
  }
  REQUIRE(center != nullptr);
  REQUIRE(tails == 4);
  for (auto& c : pa.fiber.components)
    if (&c != center) REQUIRE(pa.res.lat.pair(c.cls, center->cls) == 1);
}

#include <catch2/catch_amalgamated.hpp>

#include "jkt/nahm.hpp"

using namespace jkt;

namespace {
SpectralPoly member(CaseTag tag, uint64_t seed) {
  ParamSampler s;
  JKTParams p = s.draw(tag, seed);
  HitchinFamily fam = hitchin_family(validate(p));
  return spectral_poly(family_member(fam, s.draw_t(tag, seed)), tag);
}
SpectralPoly toy(const QBiPoly& P) {
  SpectralPoly sp;
  sp.P = P;
  sp.chart = Chart::z_chart;
  sp.d0 = 0;
  sp.m_inf = 3;
  sp.rank = 3;
  return sp;
}
}  // namespace

TEST_CASE("toy transforms: degree bookkeeping and rejection") {
  QBiPoly y = QBiPoly::var_x(), z = QBiPoly::var_z();
  {
    NahmPair p = nahm_substitute(nahm_pair_of(toy(y * y * y - z)));
    QBiPoly Q = nahm_clear_primitive(p.N);
    QBiPoly expect = QBiPoly::monomial(Rational(1), 0, 3) + QBiPoly::monomial(Rational(16), 1, 0);
    REQUIRE(Q == expect);
    REQUIRE_THROWS_AS(nahm_transform(toy(y * y * y - z)), nahm_error);
  }
  {
    NahmPair p = nahm_substitute(nahm_pair_of(toy(y * y * y + z * y + z * z)));
    QBiPoly Q = nahm_clear_primitive(p.N);
    REQUIRE(Q.deg_x() == 2);
    QBiPoly expect = QBiPoly::monomial(Rational(1), 0, 3) -
                     QBiPoly::monomial(Rational(8), 1, 1) + QBiPoly::monomial(Rational(32), 2, 0);
    REQUIRE(Q == expect);
  }
}

TEST_CASE("the substitution composed with itself is the sign map (symbolic)") {
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j) {
      NahmPair p{QBiPoly::monomial(Rational(1), i, j), 0, 0};
      NahmPair twice = nahm_substitute(nahm_substitute(p));
      REQUIRE(nahm_pairs_equal(twice, nahm_negate(p)));
    }
}

TEST_CASE("involution holds exactly for all six cases, 10 parameter sets each") {
  ParamSampler s;
  for (auto tag : all_cases)
    for (uint64_t seed = 1; seed <= 10; ++seed) {
      SpectralPoly sp = member(tag, seed);
      REQUIRE(involution_check(sp));
    }
}

TEST_CASE("even toy polynomial is a fixed point of the squared transform") {
  QBiPoly y = QBiPoly::var_x(), z = QBiPoly::var_z();
  QBiPoly P = y * y * y * y + Rational(3) * (y * y) * (z * z) + z * z + QBiPoly(Rational(1));
  NahmPair p{P, 0, 0};
  NahmPair twice = nahm_substitute(nahm_substitute(p));
  REQUIRE(nahm_pairs_equal(twice, p));
}

TEST_CASE("cleared-route proportionality constant is a signed power of two") {
  SpectralPoly sp = member(CaseTag::VI, 4);
  NahmPair p = nahm_pair_of(sp);
  NahmPair twice = nahm_substitute(nahm_substitute(p));
  NahmPair neg = nahm_negate(p);
  REQUIRE(twice.a == neg.a);
  REQUIRE(twice.b == neg.b);
  REQUIRE(twice.N.t.size() == neg.N.t.size());
  auto it1 = twice.N.t.begin();
  auto it2 = neg.N.t.begin();
  Rational ratio = it1->second / it2->second;
  for (; it1 != twice.N.t.end(); ++it1, ++it2) {
    REQUIRE(it1->first == it2->first);
    REQUIRE(it1->second == ratio * it2->second);
  }
  Integer n = num(rat_abs(ratio)), dd = den(ratio);
  auto pow2 = [](Integer v) {
    while (v % 2 == 0) v /= 2;
    return v == 1;
  };
  REQUIRE(pow2(n));
  REQUIRE(pow2(dd));
}

TEST_CASE("degree exchange for all six cases") {
  for (auto tag : all_cases)
    for (uint64_t seed = 1; seed <= 5; ++seed) {
      DualSpectralPoly d = nahm_transform(member(tag, seed));
      REQUIRE(d.Q.deg_x() == 2);
      REQUIRE(d.Q.deg_z() == 3);
    }
}

TEST_CASE("dual polar data: JKTVI image is Painleve-VI-like") {
  SpectralPoly sp = member(CaseTag::VI, 6);
  DualSpectralPoly d = nahm_transform(sp);
  auto poles = dual_polar_data(d);
  int finite = 0, log_pts = 0;
  for (auto& pp : poles) {
    if (!pp.at_infinity) ++finite;
    if (pp.matrix_pole_order == 1) ++log_pts;
    for (auto& b : pp.branches) REQUIRE(b.katz == 0);
  }
  REQUIRE(finite == 3);
  REQUIRE(poles.size() == 4);
  REQUIRE(log_pts == 4);

  auto primal = primal_polar_data(sp, CaseTag::VI);
  REQUIRE(primal.size() == 2);
  for (auto& pp : primal) {
    if (pp.at_infinity) {
      REQUIRE(pp.matrix_pole_order == 2);
      for (auto& b : pp.branches) {
        REQUIRE(b.ram == 1);
        REQUIRE(b.katz == 1);
      }
    } else {
      REQUIRE(pp.matrix_pole_order == 1);
    }
  }
}

TEST_CASE("dual polar data: ramification swap for JKTI") {
  SpectralPoly sp = member(CaseTag::I, 6);
  DualSpectralPoly d = nahm_transform(sp);
  auto poles = dual_polar_data(d);
  REQUIRE(poles.size() == 1);
  REQUIRE(poles[0].at_infinity);
  REQUIRE(poles[0].matrix_pole_order == 4);
  bool saw_ram2 = false;
  for (auto& b : poles[0].branches)
    if (b.ram == 2) {
      saw_ram2 = true;
      REQUIRE(b.pole_order == Rational(7, 2));
      REQUIRE(b.katz == Rational(5, 2));
    }
  REQUIRE(saw_ram2);
  auto primal = primal_polar_data(sp, CaseTag::I);
  REQUIRE(primal.size() == 1);
  REQUIRE(primal[0].branches.size() == 1);
  REQUIRE(primal[0].branches[0].ram == 3);
}

TEST_CASE("unramified image has integer polygon data everywhere") {
  SpectralPoly sp = member(CaseTag::VI, 8);
  auto poles = dual_polar_data(nahm_transform(sp));
  for (auto& pp : poles)
    for (auto& b : pp.branches) {
      REQUIRE(b.ram == 1);
      REQUIRE(is_integer(b.pole_order));
    }
}

TEST_CASE("end-to-end Dynkin agreement for all six cases, 10 seeds each") {
  for (auto tag : all_cases) {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
      SpectralPoly sp = member(tag, seed);
      EndToEnd r = end_to_end_dynkin(sp, tag);
      INFO("case " << case_name(tag) << " seed " << seed << ": rank3 " << r.rank3.kodaira
                   << " rank2 " << r.rank2.kodaira);
      REQUIRE(r.equal);
    }
  }
}

TEST_CASE("non-generic parameters yield a structured failure, no label comparison") {
  JKTParams p;
  p.tag = CaseTag::VI;
  p.a = {Rational(0), Rational(1), Rational(2)};
  p.tau = {Rational(1), Rational(2), Rational(3)};
  p.b = {Rational(1), Rational(2), Rational(3)};
  HitchinFamily fam = hitchin_family(validate(p));
  SpectralPoly sp = spectral_poly(family_member(fam, Rational(1)), CaseTag::VI);
  REQUIRE_THROWS_AS(nahm_transform(sp), nahm_error);
}

TEST_CASE("dual polar divisor shapes across the remaining cases") {
  // V image: one double pole plus two simple ones (one at infinity);
  // IVa and IVb images: an order-3 / order-1 pair in opposite positions;
  // II and I images: a single order-4 pole at infinity
  auto shape = [](CaseTag tag, uint64_t seed) {
    DualSpectralPoly d = nahm_transform(member(tag, seed));
    std::vector<int> orders;
    int inf_order = 0;
    for (auto& pp : dual_polar_data(d)) {
      orders.push_back(pp.matrix_pole_order);
      if (pp.at_infinity) inf_order = pp.matrix_pole_order;
    }
    std::sort(orders.begin(), orders.end());
    return std::make_pair(orders, inf_order);
  };
  REQUIRE(shape(CaseTag::VI, 2) == std::make_pair(std::vector<int>{1, 1, 1, 1}, 1));
  REQUIRE(shape(CaseTag::V, 2) == std::make_pair(std::vector<int>{1, 1, 2}, 1));
  REQUIRE(shape(CaseTag::IVa, 2) == std::make_pair(std::vector<int>{1, 3}, 1));
  REQUIRE(shape(CaseTag::IVb, 2) == std::make_pair(std::vector<int>{1, 3}, 3));
  REQUIRE(shape(CaseTag::II, 2) == std::make_pair(std::vector<int>{4}, 4));
  REQUIRE(shape(CaseTag::I, 2) == std::make_pair(std::vector<int>{4}, 4));
}

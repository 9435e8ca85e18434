#pragma once

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <string>

#include "jkt/nahm.hpp"

namespace jkt {

using ordered_json = nlohmann::ordered_json;

struct RunOptions {
  double tol = 1e-9;
  int truncation_order = -1;  // -1: per-case default 3 m + 2
  int max_t_retries = 4;
  bool run_nahm = true;
};

inline ordered_json params_json(const JKTParams& p) {
  ordered_json j;
  j["case"] = case_name(p.tag);
  auto vec = [](const std::vector<Rational>& v) {
    ordered_json a = ordered_json::array();
    for (auto& x : v) a.push_back(to_string(x));
    return a;
  };
  j["a"] = vec(p.a);
  j["b"] = vec(p.b);
  if (!p.c.empty()) j["c"] = vec(p.c);
  if (!p.tau.empty()) j["tau"] = vec(p.tau);
  return j;
}

inline JKTParams params_from_json(const nlohmann::json& j) {
  JKTParams p;
  auto tag = case_from_name(j.at("case").get<std::string>());
  if (!tag) throw std::invalid_argument("unknown case tag");
  p.tag = *tag;
  auto vec = [&](const char* key) {
    std::vector<Rational> v;
    if (!j.contains(key)) return v;
    for (auto& x : j.at(key)) v.push_back(Rational(x.get<std::string>()));
    return v;
  };
  p.a = vec("a");
  p.b = vec("b");
  p.c = vec("c");
  p.tau = vec("tau");
  return p;
}

struct CaseRun {
  CaseTag tag = CaseTag::VI;
  uint64_t seed = 0;
  JKTParams params;
  Rational t;
  int t_retries = 0;
  bool ok = false;
  ordered_json report;
  std::optional<FiberConfiguration> fiber;
  std::optional<FiberConfiguration> dual_fiber;
  DynkinLabel label, dual_label;
};

namespace detail {

inline ordered_json halfq_json(const HalfQForm& hq) {
  ordered_json j;
  j["ram"] = hq.ram;
  ordered_json terms = ordered_json::array();
  for (auto& [k, v] : hq.terms) {
    ordered_json t;
    t["exponent"] = std::to_string(k) + "/" + std::to_string(hq.ram);
    t["coeff"] = to_string(v);
    if (hq.exact && hq.exact->count(k)) t["exact"] = to_string(hq.exact->at(k));
    terms.push_back(t);
  }
  j["terms"] = terms;
  j["residue"] = hq.residue_exact ? to_string(*hq.residue_exact) : to_string(hq.residue);
  return j;
}

}  // namespace detail

// Full per-case pipeline with a machine-readable report. Deterministic for a
// fixed seed; every check lands in report["checks"] and the exit verdict.
inline CaseRun run_case(CaseTag tag, uint64_t seed, std::optional<JKTParams> given_params,
                        std::optional<Rational> given_t, const RunOptions& opt = {}) {
  CaseRun run;
  run.tag = tag;
  run.seed = seed;
  ordered_json& j = run.report;
  j["schema"] = "jkt-report/1";
  j["case"] = case_name(tag);
  j["seed"] = seed;
  ordered_json checks;
  bool ok = true;
  auto check = [&](const char* name, bool value) {
    checks[name] = value;
    ok = ok && value;
  };

  ParamSampler sampler;
  run.params = given_params ? *given_params : sampler.draw(tag, seed);
  j["params"] = params_json(run.params);

  auto violations = check_params(run.params);
  if (!violations.empty()) {
    ordered_json v = ordered_json::array();
    for (auto& viol : violations) v.push_back({{"code", viol.code}, {"message", viol.message}});
    j["violations"] = v;
    check("params_valid", false);
    j["checks"] = checks;
    j["ok"] = false;
    return run;
  }
  check("params_valid", true);

  try {
    PolarPresentation pp = validate(run.params);
    HitchinFamily fam = hitchin_family(pp);
    {
      ordered_json f;
      f["constraint_rank"] = fam.rank;
      auto poly_json = [](const QPoly& q) {
        ordered_json a = ordered_json::array();
        for (int k = 0; k <= q.degree(); ++k) a.push_back(to_string(q.coeff(k)));
        return a;
      };
      f["direction"] = {{"F", poly_json(fam.direction.F)},
                        {"G", poly_json(fam.direction.G)},
                        {"H", poly_json(fam.direction.H)}};
      j["family"] = f;
    }
    check("family_corank_one", fam.rank == 8);

    // pick a smooth member, deterministically stepping past degenerate fibers
    SpectralPoly sp;
    bool smooth = false;
    for (int attempt = 0; attempt <= opt.max_t_retries && !smooth; ++attempt) {
      run.t = given_t && attempt == 0 ? *given_t : sampler.draw_t(tag, seed, attempt);
      sp = spectral_poly(family_member(fam, run.t), tag);
      smooth = smoothness_check(sp, tag, opt.tol).smooth;
      run.t_retries = attempt;
      if (given_t) break;
    }
    j["t"] = to_string(run.t);
    j["t_retries"] = run.t_retries;
    check("member_smooth", smooth);
    check("infinity_disjoint", infinity_disjoint(sp));
    if (!smooth) {
      j["checks"] = checks;
      j["ok"] = false;
      return run;
    }

    // spectral summary
    const CaseInfo& ci = case_info(tag);
    int order = opt.truncation_order > 0 ? opt.truncation_order : 3 * ci.m_inf + 2;
    BranchData binf = eigenvalue_puiseux(sp, tag, true, order, opt.tol);
    ordered_json spectral;
    spectral["profile_at_infinity"] = binf.profile;
    ordered_json hq = ordered_json::array();
    for (auto& h : binf.half_q) hq.push_back(detail::halfq_json(h));
    spectral["half_q"] = hq;
    check("profile_matches_case", binf.profile == ci.ram_profile);
    if (ci.d0 == 1) {
      BranchData b0 = eigenvalue_puiseux(sp, tag, false, order, opt.tol);
      ordered_json res = ordered_json::array();
      for (auto& h : b0.half_q)
        res.push_back(h.residue_exact ? to_string(*h.residue_exact) : to_string(h.residue));
      spectral["residues_at_zero"] = res;
    }
    RamificationData rd = ramification_length(sp, tag);
    spectral["ramification"] = {{"finite", rd.finite}, {"at_infinity", rd.at_infinity},
                                {"total", rd.total}};
    check("ramification_length_6", rd.total == 6);
    EulerGenus eg = euler_genus(sp, tag);
    spectral["euler"] = eg.euler;
    spectral["genus"] = eg.genus;
    check("genus_one", eg.euler == 0 && eg.genus == 1);
    j["spectral"] = spectral;

    // pencil resolution
    PencilAnalysis pa = analyze_primal(sp, tag);
    run.fiber = pa.fiber;
    run.label = pa.label;
    ordered_json resj;
    resj["tower_depths"] = pa.res.tower_depths;
    ordered_json cps = ordered_json::array();
    for (auto& cp : pa.res.checkpoints)
      cps.push_back({{"blowups", cp.blowups},
                     {"rank", cp.rank},
                     {"K2", cp.K2},
                     {"pencil2", cp.pencil2}});
    resj["checkpoints"] = cps;
    resj["lattice_rank"] = pa.res.lat.rank();
    resj["unimodular"] = pa.res.lat.unimodular();
    resj["K2"] = pa.res.lat.self(pa.res.K);
    resj["Finf2"] = pa.res.lat.self(pa.res.pencil_class);
    resj["k"] = pa.fiber.k;
    resj["l"] = pa.fiber.l;
    j["resolution"] = resj;
    bool stages = true;
    for (auto& cp : pa.res.checkpoints)
      stages = stages && cp.rank == 2 + cp.blowups && cp.K2 == 8 - cp.blowups &&
               cp.pencil2 == 9 - cp.blowups;
    check("lattice_stages", stages);
    check("nine_blowups", pa.res.n_blowups == 9);
    check("depth_profile", pa.res.tower_depths == expected_depth_profile(tag));
    check("rank_ten_unimodular", pa.res.lat.rank() == 10 && pa.res.lat.unimodular());
    check("Finf_squared_zero", pa.res.lat.self(pa.res.pencil_class) == 0);
    check("anticanonical", verify_anticanonical(pa.res));
    check("k_plus_l_is_9", pa.fiber.k + pa.fiber.l == 9);
    {
      auto rep = verify_class_equations(pa.res, pa.fiber, pa.res.pencil_class);
      check("class_equations", rep.gram_unimodular && rep.satisfied);
      check("pencil_dimension_one", pencil_dimension(pa.res, pa.fiber) == 1);
      check("member_disjoint", member_disjoint_from_components(pa.res));
    }
    ordered_json fj;
    ordered_json comps = ordered_json::array();
    for (auto& c : pa.fiber.components)
      comps.push_back({{"name", c.name}, {"mult", c.mult}, {"self", c.self_int}});
    fj["components"] = comps;
    fj["kodaira"] = pa.label.kodaira;
    fj["dynkin"] = pa.label.dynkin;
    j["fiber"] = fj;

    // transform
    if (opt.run_nahm) {
      ordered_json nj;
      DualSpectralPoly d = nahm_transform(sp);
      nj["deg_eta"] = d.Q.deg_x();
      nj["deg_zhat"] = d.Q.deg_z();
      check("degree_exchange", d.Q.deg_x() == 2 && d.Q.deg_z() == 3);
      bool inv = involution_check(sp);
      nj["involution"] = inv;
      check("involution", inv);
      ordered_json poles = ordered_json::array();
      for (auto& ppj : dual_polar_data(d, opt.tol)) {
        ordered_json pj;
        pj["location"] = ppj.at_infinity ? "inf" : to_string(ppj.location);
        pj["order"] = ppj.matrix_pole_order;
        ordered_json brs = ordered_json::array();
        for (auto& b : ppj.branches)
          brs.push_back({{"ram", b.ram},
                         {"pole_order", to_string(b.pole_order)},
                         {"katz", to_string(b.katz)}});
        pj["branches"] = brs;
        poles.push_back(pj);
      }
      nj["dual_poles"] = poles;
      PencilAnalysis dual = analyze_pencil(dual_pencil_config(d));
      run.dual_fiber = dual.fiber;
      run.dual_label = dual.label;
      nj["dual_kodaira"] = dual.label.kodaira;
      nj["dual_dynkin"] = dual.label.dynkin;
      bool agree = dual.label.kodaira == pa.label.kodaira && dual.label.dynkin == pa.label.dynkin;
      nj["agree"] = agree;
      check("dynkin_agreement", agree);
      j["nahm"] = nj;
    }
  } catch (const std::exception& e) {
    j["error"] = e.what();
    check("pipeline_completed", false);
    j["checks"] = checks;
    j["ok"] = false;
    return run;
  }
  j["checks"] = checks;
  j["ok"] = ok;
  run.ok = ok;
  return run;
}

// atomic text write: temp file in the same directory, then rename
inline void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp);
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

// ---- Table 1 ----------------------------------------------------------------

struct Table1Row {
  const char* tag;
  const char* divisor;
  const char* twist;
  const char* label;
};

// the golden classification of the six cases
inline const std::vector<Table1Row>& table1_golden() {
  static const std::vector<Table1Row> rows = {
      {"VI", "{0} + 2{inf}", "untwisted", "I0* (D4~)"},
      {"V", "{0} + 2{inf}", "minimally twisted", "I1* (D5~)"},
      {"IVa", "{0} + 2{inf}", "maximally twisted", "E6~"},
      {"IVb", "3{inf}", "untwisted", "E6~"},
      {"II", "3{inf}", "minimally twisted", "E7~"},
      {"I", "3{inf}", "maximally twisted", "E8~"},
  };
  return rows;
}

inline std::string polar_divisor_string(CaseTag tag) {
  return case_info(tag).d0 == 1 ? "{0} + 2{inf}" : "3{inf}";
}

}  // namespace jkt

#pragma once

#include "jkt/kodaira.hpp"
#include "jkt/pencil.hpp"
#include "jkt/sampler.hpp"
#include "jkt/spectral.hpp"

namespace jkt {

// C2 of the primal pencil: F1 + 2 F2 + 3 sigma when D = {0} + 2{inf},
// 3 F + 3 sigma when D = 3{inf}; F2 (resp. F) is the fiber over infinity and
// F1 the fiber over 0.
inline PencilConfig primal_pencil_config(const SpectralPoly& sp) {
  PencilConfig cfg;
  SpectralPoly z = sp.chart == Chart::z_chart ? sp : chart_change(sp);
  cfg.curve = {z.P, z.rank, 1};
  if (z.d0 == 1) {
    cfg.fibers.push_back({false, Rational(0), 1});
    cfg.fibers.push_back({true, Rational(0), 2});
  } else {
    cfg.fibers.push_back({true, Rational(0), 3});
  }
  cfg.expected_blowups = 9;
  cfg.blow_down_sigma = true;
  return cfg;
}

// Expected resolution-tree depth profiles (sorted), used as postconditions.
inline std::vector<int> expected_depth_profile(CaseTag tag) {
  switch (tag) {
    case CaseTag::VI: return {1, 1, 1, 2, 2, 2};
    case CaseTag::V: return {1, 1, 1, 2, 4};
    case CaseTag::IVa: return {1, 1, 1, 6};
    case CaseTag::IVb: return {3, 3, 3};
    case CaseTag::II: return {3, 6};
    case CaseTag::I: return {9};
  }
  return {};
}

struct PencilAnalysis {
  ResolutionResult res;
  FiberConfiguration fiber;
  DynkinLabel label;
};

inline PencilAnalysis analyze_pencil(const PencilConfig& cfg) {
  PencilAnalysis pa;
  pa.res = resolve_base_locus(cfg);
  pa.fiber = fiber_at_infinity(pa.res);
  pa.label = classify_dynkin(pa.fiber);
  return pa;
}

inline PencilAnalysis analyze_primal(const SpectralPoly& sp, CaseTag tag) {
  PencilAnalysis pa = analyze_pencil(primal_pencil_config(sp));
  if (pa.res.tower_depths != expected_depth_profile(tag))
    throw pencil_error("analyze_primal: resolution tree does not match the case recipe");
  // every exceptional of the rank-3 resolution is a fiber component or a
  // section; their counts fill the nine blow-ups
  if (!pa.fiber.extra_vertical.empty() || pa.fiber.k + pa.fiber.l != 9)
    throw pencil_error("analyze_primal: k + l != 9");
  return pa;
}

// ---- single-curve blow-up utility (engine self-test) ---------------------------

// Resolve the singular points of one affine plane curve over the origin chart
// by repeated blow-ups; reports center multiplicities and checks that the
// proper transform ends smooth. Rational centers only.
struct CurveResolutionStep {
  Rational x0, y0;
  int mult = 0;
};

struct CurveResolution {
  std::vector<CurveResolutionStep> steps;
  bool proper_smooth = false;
};

inline CurveResolution resolve_curve_singularity(QBiPoly f, int max_steps = 12) {
  CurveResolution out;
  struct Patch {
    QBiPoly eq;
  };
  std::deque<QBiPoly> work{f};
  int steps = 0;
  while (!work.empty()) {
    QBiPoly cur = work.front();
    work.pop_front();
    // find a rational singular point
    QBiPoly fx = cur.deriv_x(), fz = cur.deriv_z();
    if (fx.is_zero() && fz.is_zero()) throw pencil_error("resolve_curve_singularity: constant input");
    std::optional<std::pair<Rational, Rational>> sing;
    {
      QPoly r1 = fx.is_zero() ? QPoly::zero() : resultant_x(cur, fx);
      QPoly r2 = fz.is_zero() ? QPoly::zero() : resultant_x(cur, fz);
      QPoly g = r1.is_zero() ? r2 : (r2.is_zero() ? r1 : poly_gcd(r1, r2));
      if (!g.is_zero() && g.degree() > 0) {
        auto roots = rational_roots(g);
        for (auto& [z0, m] : roots) {
          (void)m;
          QPoly a = cur.eval_z(z0), b = fx.eval_z(z0), c = fz.eval_z(z0);
          QPoly gg = poly_gcd(poly_gcd(a, b), c);
          if (gg.degree() >= 1) {
            auto yr = rational_roots(gg);
            if (!yr.empty()) {
              sing = {{yr[0].first, z0}};
              break;
            }
          }
        }
      }
    }
    if (!sing) continue;  // this patch is smooth
    if (++steps > max_steps) throw pencil_error("resolve_curve_singularity: too many blow-ups");
    auto [x0, y0] = *sing;
    QBiPoly t = cur.translate(x0, y0);
    int m = t.mult0();
    out.steps.push_back({x0, y0, m});
    QBiPoly u = QBiPoly::var_x(), v = QBiPoly::var_z();
    work.push_back(t.subs(u, u * v).div_xk(m));
    work.push_back(t.subs(u * v, v).div_zk(m));
  }
  out.proper_smooth = true;
  return out;
}

}  // namespace jkt

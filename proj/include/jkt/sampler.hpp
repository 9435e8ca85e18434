#pragma once

#include <cstdint>

#include "jkt/localforms.hpp"

namespace jkt {

// Deterministic, platform-independent parameter sampler. Rationals are drawn
// with small numerators and denominators (well inside the <= 97 budget) and
// rejection-sampled against the genericity predicates:
//   - all case constraints of the normal forms,
//   - pairwise distinct residue eigenvalues tau at the finite pole,
//   - nonvanishing subleading entry b0 in every twisted case,
//   - the transform normalization: tau0 = 0 when D = {0} + 2{inf}, and a0 = 0
//     when D = 3{inf}. This pins the base point the dual ruling projects from,
//     so the spectral-level transform is the plain coordinate exchange.
struct ParamSampler {
  long long num_bound = 15;
  long long den_bound = 6;

  struct Engine {
    uint64_t s;
    explicit Engine(uint64_t seed) : s(seed ^ 0x5851f42d4c957f2dULL) {}
    uint64_t next() {
      s += 0x9e3779b97f4a7c15ULL;
      uint64_t z = s;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      return z ^ (z >> 31);
    }
    long long range(long long lo, long long hi) {
      return lo + static_cast<long long>(next() % static_cast<uint64_t>(hi - lo + 1));
    }
  };

  Rational draw_rat(Engine& e) const {
    long long n = e.range(-num_bound, num_bound);
    long long d = e.range(1, den_bound);
    return Rational(n, d);
  }
  Rational draw_nonzero(Engine& e) const {
    for (;;) {
      Rational r = draw_rat(e);
      if (r != 0) return r;
    }
  }

  JKTParams draw(CaseTag tag, uint64_t seed) const {
    Engine e(seed * 0x9e3779b97f4a7c15ULL + static_cast<uint64_t>(tag) + 1);
    const CaseInfo& ci = case_info(tag);
    JKTParams p;
    p.tag = tag;
    // a: first entry 0 in the D = 3{inf} cases, distinct entries throughout
    p.a.assign(ci.n_a, Rational(0));
    for (;;) {
      if (ci.d0 == 1) {
        for (int i = 0; i < ci.n_a; ++i) p.a[i] = i == 0 ? draw_nonzero(e) : draw_rat(e);
      } else {
        p.a[0] = Rational(0);
        for (int i = 1; i < ci.n_a; ++i) p.a[i] = draw_nonzero(e);
      }
      bool ok = true;
      for (int i = 0; i < ci.n_a; ++i)
        for (int j = i + 1; j < ci.n_a; ++j)
          if (p.a[i] == p.a[j]) ok = false;
      if (ok) break;
    }
    if (ci.has_tau) {
      p.tau.assign(3, Rational(0));
      for (;;) {
        p.tau[0] = Rational(0);
        p.tau[1] = draw_nonzero(e);
        p.tau[2] = draw_nonzero(e);
        if (p.tau[1] != p.tau[2]) break;
      }
    }
    Rational sum_tau = ci.has_tau ? p.tau[0] + p.tau[1] + p.tau[2] : Rational(0);
    p.b.assign(3, Rational(0));
    bool twisted = ci.ram_profile.size() < 3;
    p.b[0] = twisted ? draw_nonzero(e) : draw_rat(e);
    p.b[1] = draw_rat(e);
    p.b[2] = draw_rat(e);
    if (ci.has_c) p.c.assign(3, Rational(0));
    switch (tag) {
      case CaseTag::VI:
        p.b[2] = sum_tau - p.b[0] - p.b[1];
        break;
      case CaseTag::V:
        p.b[2] = sum_tau - p.b[1];
        break;
      case CaseTag::IVa:
        p.b[2] = sum_tau;
        break;
      case CaseTag::IVb:
        p.c[0] = draw_rat(e);
        p.c[1] = draw_rat(e);
        p.c[2] = -p.c[0] - p.c[1];
        break;
      case CaseTag::II:
        p.c[0] = draw_rat(e);
        p.c[1] = draw_rat(e);
        p.c[2] = -p.c[1];
        break;
      case CaseTag::I:
        p.c[0] = draw_rat(e);
        p.c[1] = draw_rat(e);
        p.c[2] = draw_rat(e);
        break;
    }
    return p;
  }

  // Hitchin parameter of the family member analyzed under this seed; the
  // attempt counter lets callers step away from accidentally degenerate fibers
  // deterministically.
  Rational draw_t(CaseTag tag, uint64_t seed, int attempt = 0) const {
    Engine e(seed * 0x2545f4914f6cdd1dULL + 77 * static_cast<uint64_t>(tag) +
             static_cast<uint64_t>(attempt) * 1315423911ULL + 3);
    return draw_nonzero(e);
  }
};

}  // namespace jkt

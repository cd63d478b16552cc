#pragma once

// Property sweeps shared by the unit tests and the acceptance binary. Each
// returns how many cases ran and the first few failures.

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "toricseq/cohomology.hpp"

namespace props {

using namespace toricseq;

struct Tally {
  size_t checked = 0;
  size_t failed = 0;
  std::vector<std::string> examples;

  void fail(const std::string& what) {
    ++failed;
    if (examples.size() < 5) examples.push_back(what);
  }
  bool ok() const { return failed == 0 && checked > 0; }
  std::string report() const {
    std::string out = std::to_string(checked) + " cases, " + std::to_string(failed) + " failures";
    for (const auto& e : examples) out += "; " + e;
    return out;
  }
};

// h0 by box scan, chi from the fan, Serre symmetry and character shifts on
// random torus divisors over every census surface.
inline Tally riemann_roch_serre(size_t samples, std::uint64_t seed) {
  Tally t;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Int> coeff(-3, 3), shift(-2, 2);
  const auto surfaces = testing::census();
  for (size_t k = 0; k < samples; ++k) {
    const ToricSurface& s = surfaces[k % surfaces.size()];
    const auto rays = testing::plain_rays(s);
    IntVec d(s.size());
    for (auto& x : d) x = coeff(rng);
    const CohomologyTriple c = torus_cohomology(s, d);
    IntVec dual(d.size());
    for (size_t i = 0; i < d.size(); ++i) dual[i] = -1 - d[i];
    const CohomologyTriple cd = torus_cohomology(s, dual);
    // d + <m, l_i> is linearly equivalent to d
    const Int m0 = shift(rng), m1 = shift(rng);
    IntVec moved(d.size());
    for (size_t i = 0; i < d.size(); ++i) moved[i] = d[i] + m0 * rays[i][0] + m1 * rays[i][1];
    const CohomologyTriple cm = torus_cohomology(s, moved);

    ++t.checked;
    const Int chi = oracle::torus_chi(s.self_intersections(), d);
    std::string bad;
    if (c.h0 != oracle::box_count(rays, d)) bad += " h0";
    if (c.h2 != oracle::box_count(rays, dual)) bad += " h2";
    if (c.h0 - c.h1 + c.h2 != chi) bad += " chi";
    if (c.h1 < 0) bad += " h1<0";
    if (!(cd.h0 == c.h2 && cd.h1 == c.h1 && cd.h2 == c.h0)) bad += " serre";
    if (!(cm == c)) bad += " shift";
    if (!bad.empty()) t.fail(to_string(s.self_intersections()) + " d=" + to_string(d) + ":" + bad);
  }
  return t;
}

// Both statements of the lemma on exceptional classes, over every solution
// of chi(-D) = 0 with coefficients in [-bound, bound].
inline Tally lemma_one(Int bound) {
  Tally t;
  const std::vector<SurfaceBasis> bases{SurfaceBasis::p2(1), SurfaceBasis::p2(2), SurfaceBasis::hirzebruch(0, 1),
                                        SurfaceBasis::hirzebruch(1, 1), SurfaceBasis::hirzebruch(2, 1),
                                        SurfaceBasis::hirzebruch(3, 0)};
  for (const auto& b : bases) {
    const size_t r = static_cast<size_t>(b.rank());
    const DivisorClass k = canonical_class(b);
    std::vector<DivisorClass> sols;
    IntVec c(r, -bound);
    while (true) {
      const DivisorClass d(b, c);
      if (euler_char(-d) == 0) sols.push_back(d);
      size_t i = 0;
      while (i < r && c[i] == bound) c[i++] = -bound;
      if (i == r) break;
      ++c[i];
    }
    for (const auto& d : sols) {
      ++t.checked;
      if (euler_char(d) != -intersect(k, d) || euler_char(d) != intersect(d, d) + 2)
        t.fail("(i) " + b.to_string() + " " + d.to_string());
    }
    for (const auto& d : sols)
      for (const auto& e : sols) {
        ++t.checked;
        const bool s1 = euler_char(-d - e) == 0;
        const bool s2 = intersect(e, d) == 1;
        const bool s3 = euler_char(d) + euler_char(e) == euler_char(d + e);
        if (s1 != s2 || s2 != s3) t.fail("(ii) " + b.to_string() + " " + d.to_string() + ", " + e.to_string());
      }
  }
  return t;
}

// The three intersection axioms, directly.
inline std::string axioms_failure(const ToricSystem& sys) {
  const size_t n = sys.size();
  if (static_cast<int>(n) != sys.basis().rank() + 2) return "length";
  DivisorClass total = DivisorClass::zero(sys.basis());
  for (size_t i = 0; i < n; ++i) {
    total += sys[i];
    for (size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (intersect(sys[i], sys[j]) != (adjacent ? 1 : 0)) return "A" + std::to_string(i + 1) + ".A" + std::to_string(j + 1);
    }
  }
  if (total != -canonical_class(sys.basis())) return "sum";
  return "";
}

// Random insertion chains over random base systems.
inline Tally augmentation_chains(size_t chains, std::uint64_t seed) {
  Tally t;
  std::mt19937_64 rng(seed);
  for (size_t k = 0; k < chains; ++k) {
    ToricSystem sys = p2_system();
    if (k % 3 != 0) {
      const Int a = std::uniform_int_distribution<Int>(0, 4)(rng);
      sys = hirzebruch_system(a, std::uniform_int_distribution<Int>(-2, a + 1)(rng));
    }
    const size_t steps = std::uniform_int_distribution<size_t>(1, 6)(rng);
    std::string path;
    for (size_t s = 0; s < steps; ++s) {
      const size_t pos = std::uniform_int_distribution<size_t>(0, sys.size() - 1)(rng);
      path += std::to_string(pos) + " ";
      sys = augment(sys, pos);
      ++t.checked;
      const std::string why = axioms_failure(sys);
      if (!why.empty() || !validate(sys).valid) t.fail(path + "-> " + sys.to_string() + " " + why);
    }
  }
  return t;
}

// check_exceptional under every rotation and the reversal.
inline Tally rotation_invariance() {
  Tally t;
  for (const auto& g : testing::golden_systems()) {
    const bool v = check_exceptional(g.system, g.surface).verdict;
    for (const ToricSystem& base : {g.system, reverse(g.system)})
      for (size_t k = 0; k < base.size(); ++k) {
        ++t.checked;
        if (check_exceptional(rotate(base, static_cast<Int>(k)), g.surface).verdict != v)
          t.fail(g.name + " rotation " + std::to_string(k));
      }
  }
  return t;
}

// sum a_i = 12 - 3n over the unfiltered census and random tracked chains.
inline Tally self_intersection_sum(std::uint64_t seed) {
  Tally t;
  auto check = [&](const ToricSurface& s) {
    ++t.checked;
    const Int total = std::accumulate(s.self_intersections().begin(), s.self_intersections().end(), Int{0});
    if (total != 12 - 3 * static_cast<Int>(s.size())) t.fail(to_string(s.self_intersections()));
  };
  for (const auto& s : enumerate_blowups(10, false)) check(s);
  std::mt19937_64 rng(seed);
  for (int k = 0; k < 2000; ++k) {
    ToricSurface s = k % 2 ? tracked_p2() : tracked_hirzebruch(k % 7);
    const int steps = k % 10;
    for (int j = 0; j < steps; ++j) s = blow_up(s, std::uniform_int_distribution<size_t>(0, s.size() - 1)(rng));
    check(s);
  }
  return t;
}

// Blow-up displays on toric models pass the strong check; the F_a family
// passes exactly for s >= -1 in -2 <= s <= a+1.
inline Tally strong_goldens() {
  Tally t;
  for (size_t n = 1; n <= 3; ++n) {
    const BlowupStructure st = distinct_fixed_points(BaseKind::kP2, 0, n);
    ++t.checked;
    if (!check_strongly_exceptional(blowup_once_system(st), st.surface()).verdict) t.fail("blow-up once t=" + std::to_string(n));
    for (size_t r = 0; r <= n; ++r) {
      ++t.checked;
      if (!check_strongly_exceptional(two_step_system(st, r), st.surface()).verdict)
        t.fail("P2 display t=" + std::to_string(n) + " r=" + std::to_string(r));
    }
  }
  // Two-round structures with a second-level point on the first exceptional curve.
  for (size_t cone : {0, 1}) {
    const BlowupStructure st = BlowupStructure::p2({{PointKind::kTorusFixed, 0, 0}, {PointKind::kTorusFixed, cone, 0}});
    ++t.checked;
    if (!check_strongly_exceptional(two_step_system(st, 1), st.surface()).verdict)
      t.fail("P2 display over R1, cone " + std::to_string(cone));
  }
  for (Int a = 0; a <= 2; ++a)
    for (size_t n = 1; n <= 2; ++n) {
      const BlowupStructure st = distinct_fixed_points(BaseKind::kHirzebruch, a, n);
      for (size_t r = 0; r <= n; ++r)
        for (Int s = -1; s <= a + 1; ++s) {
          ++t.checked;
          if (!check_strongly_exceptional(two_step_system(st, r, s), st.surface()).verdict)
            t.fail("F" + std::to_string(a) + " display t=" + std::to_string(n) + " r=" + std::to_string(r) + " s=" + std::to_string(s));
        }
    }
  for (Int a = 0; a <= 4; ++a) {
    const SRange range = SRange::standard(a);
    for (Int s = range.lo; s <= range.hi; ++s) {
      ++t.checked;
      if (check_strongly_exceptional(hirzebruch_system(a, s), tracked_hirzebruch(a)).verdict != (s >= -1))
        t.fail("F" + std::to_string(a) + " family s=" + std::to_string(s));
    }
  }
  return t;
}

}  // namespace props

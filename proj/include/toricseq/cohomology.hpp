#pragma once

#include <map>
#include <shared_mutex>
#include <span>
#include <vector>

#include "toricseq/fans.hpp"
#include "toricseq/lattice.hpp"

namespace toricseq {

/// A torus-invariant divisor sum d_i D_i on a given surface.
struct TorusDivisor {
  IntVec d;
};

/// Lattice points m with <m, l_i> >= -d_i: a monomial basis of H^0.
struct SectionBasis {
  std::vector<Vec2> points;
};

struct CohomologyTriple {
  Int h0 = 0;
  Int h1 = 0;
  Int h2 = 0;
  friend bool operator==(const CohomologyTriple&, const CohomologyTriple&) = default;
  bool vanishes() const { return h0 == 0 && h1 == 0 && h2 == 0; }
  bool higher_vanish() const { return h1 == 0 && h2 == 0; }
};

/// Row-by-row count of the section polygon; exact, no floating point.
Int count_sections(const ToricSurface& surface, std::span<const Int> d);
SectionBasis section_basis(const ToricSurface& surface, std::span<const Int> d);

/// chi of a torus divisor from the toric intersection numbers alone.
Int torus_euler_char(const ToricSurface& surface, std::span<const Int> d);

/// (h0, h1, h2): h0 by counting, h2 = h0(K - D) with K = -sum D_i, h1 from
/// Riemann-Roch. Throws InternalError if h1 comes out negative.
CohomologyTriple torus_cohomology(const ToricSurface& surface, std::span<const Int> d);

/// torus_cohomology over many divisors on one surface, in input order.
std::vector<CohomologyTriple> batch_cohomology(const ToricSurface& surface, const std::vector<IntVec>& divisors);
std::vector<CohomologyTriple> batch_cohomology_serial(const ToricSurface& surface, const std::vector<IntVec>& divisors);

/// Torus representative of a class with d_1 = d_2 = 0.
TorusDivisor lift_class(const ToricSurface& surface, const DivisorClass& d);

CohomologyTriple cohomology_all(const ToricSurface& surface, const DivisorClass& d);
bool vanishes_all_k(const ToricSurface& surface, const DivisorClass& d);
bool vanishes_higher(const ToricSurface& surface, const DivisorClass& d);

/// Cohomology on one tracked surface with a precomputed lift and a cache of
/// section counts keyed by the normalized representative. Safe to share
/// between threads.
class CohomologyEngine {
 public:
  explicit CohomologyEngine(ToricSurface tracked);

  const ToricSurface& surface() const { return surface_; }
  const SurfaceBasis& basis() const { return surface_.basis(); }

  IntVec lift(const DivisorClass& d) const;
  Int h0(const DivisorClass& d);
  CohomologyTriple of(const DivisorClass& d);
  /// Lattice points of H^0(E - D) in the normalized coordinates; these are
  /// the characters used to label quiver arrows.
  SectionBasis sections(const DivisorClass& d) const;

 private:
  Int cached_count(const IntVec& d);

  ToricSurface surface_;
  IntMatrix lift_matrix_;  // maps class coefficients to d_3..d_n
  std::shared_mutex mutex_;
  std::map<IntVec, Int> counts_;
};

}  // namespace toricseq

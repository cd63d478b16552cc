#include "toricseq/cohomology.hpp"

#include <exception>
#include <limits>
#include <mutex>

namespace toricseq {

namespace {

using Wide = __int128;

struct RowRange {
  bool empty = true;
  Int lo = 0;
  Int hi = 0;
};

// Exact y-extent of the polygon: the min and max y over all feasible
// intersection points of two boundary lines.
RowRange y_extent(const std::vector<Vec2>& rays, std::span<const Int> d) {
  const size_t n = rays.size();
  bool found = false;
  Wide min_num = 0, min_den = 1, max_num = 0, max_den = 1;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      const Wide ui = rays[i][0], vi = rays[i][1], uj = rays[j][0], vj = rays[j][1];
      const Wide ci = -static_cast<Wide>(d[i]), cj = -static_cast<Wide>(d[j]);
      Wide den = ui * vj - vi * uj;
      if (den == 0) continue;
      Wide x = ci * vj - vi * cj;
      Wide y = ui * cj - ci * uj;
      if (den < 0) {
        den = -den;
        x = -x;
        y = -y;
      }
      bool feasible = true;
      for (size_t k = 0; k < n && feasible; ++k) {
        const Wide ck = -static_cast<Wide>(d[k]);
        if (rays[k][0] * x + rays[k][1] * y < ck * den) feasible = false;
      }
      if (!feasible) continue;
      if (!found || y * min_den < min_num * den) {
        min_num = y;
        min_den = den;
      }
      if (!found || y * max_den > max_num * den) {
        max_num = y;
        max_den = den;
      }
      found = true;
    }
  RowRange r;
  if (!found) return r;
  auto floor_w = [](Wide a, Wide b) {
    Wide q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  };
  r.lo = static_cast<Int>(-floor_w(-min_num, min_den));
  r.hi = static_cast<Int>(floor_w(max_num, max_den));
  r.empty = r.lo > r.hi;
  return r;
}

// Integer x-interval of row y.
RowRange row_interval(const std::vector<Vec2>& rays, std::span<const Int> d, Int y) {
  Int lo = std::numeric_limits<Int>::min();
  Int hi = std::numeric_limits<Int>::max();
  for (size_t k = 0; k < rays.size(); ++k) {
    const Int u = rays[k][0];
    const Int rhs = checked_sub(-d[k], checked_mul(rays[k][1], y));  // u x >= rhs
    if (u > 0) {
      lo = std::max(lo, ceil_div(rhs, u));
    } else if (u < 0) {
      hi = std::min(hi, floor_div(rhs, u));
    } else if (rhs > 0) {
      return {};
    }
  }
  RowRange r;
  r.lo = lo;
  r.hi = hi;
  r.empty = lo > hi;
  return r;
}

void require_length(const ToricSurface& surface, std::span<const Int> d) {
  if (d.size() != surface.size()) {
    throw InvalidInput("torus divisor has " + std::to_string(d.size()) + " coefficients, surface has " +
                       std::to_string(surface.size()) + " rays");
  }
}

IntVec serre_dual(std::span<const Int> d) {
  IntVec k(d.size());
  for (size_t i = 0; i < d.size(); ++i) k[i] = checked_sub(-1, d[i]);
  return k;
}

}  // namespace

Int count_sections(const ToricSurface& surface, std::span<const Int> d) {
  require_length(surface, d);
  const RowRange ys = y_extent(surface.rays(), d);
  if (ys.empty) return 0;
  Int count = 0;
  for (Int y = ys.lo; y <= ys.hi; ++y) {
    const RowRange xs = row_interval(surface.rays(), d, y);
    if (!xs.empty) count = checked_add(count, xs.hi - xs.lo + 1);
  }
  return count;
}

SectionBasis section_basis(const ToricSurface& surface, std::span<const Int> d) {
  require_length(surface, d);
  SectionBasis basis;
  const RowRange ys = y_extent(surface.rays(), d);
  if (ys.empty) return basis;
  for (Int y = ys.lo; y <= ys.hi; ++y) {
    const RowRange xs = row_interval(surface.rays(), d, y);
    if (xs.empty) continue;
    for (Int x = xs.lo; x <= xs.hi; ++x) basis.points.push_back({x, y});
  }
  return basis;
}

Int torus_euler_char(const ToricSurface& surface, std::span<const Int> d) {
  require_length(surface, d);
  const size_t n = surface.size();
  Int square = 0, anti_canonical_degree = 0;
  for (size_t i = 0; i < n; ++i) {
    const Int ai = surface.self_intersection(i);
    square = checked_add(square, checked_mul(ai, checked_mul(d[i], d[i])));
    square = checked_add(square, checked_mul(2, checked_mul(d[i], d[(i + 1) % n])));
    anti_canonical_degree = checked_add(anti_canonical_degree, checked_mul(d[i], ai + 2));
  }
  const Int twice = checked_add(square, anti_canonical_degree);
  if (twice % 2 != 0) throw InternalError("D^2 - K.D is odd for torus divisor " + to_string(IntVec(d.begin(), d.end())));
  return 1 + twice / 2;
}

CohomologyTriple torus_cohomology(const ToricSurface& surface, std::span<const Int> d) {
  CohomologyTriple c;
  c.h0 = count_sections(surface, d);
  const IntVec dual = serre_dual(d);
  c.h2 = count_sections(surface, dual);
  c.h1 = c.h0 + c.h2 - torus_euler_char(surface, d);
  if (c.h1 < 0) throw InternalError("negative h1 for torus divisor " + to_string(IntVec(d.begin(), d.end())));
  return c;
}

std::vector<CohomologyTriple> batch_cohomology_serial(const ToricSurface& surface, const std::vector<IntVec>& divisors) {
  std::vector<CohomologyTriple> out;
  out.reserve(divisors.size());
  for (const IntVec& d : divisors) out.push_back(torus_cohomology(surface, d));
  return out;
}

std::vector<CohomologyTriple> batch_cohomology(const ToricSurface& surface, const std::vector<IntVec>& divisors) {
  std::vector<CohomologyTriple> out(divisors.size());
  std::vector<std::exception_ptr> errors(divisors.size());
  const auto count = static_cast<std::ptrdiff_t>(divisors.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const auto i = static_cast<size_t>(k);
    try {
      out[i] = torus_cohomology(surface, divisors[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

namespace {

IntMatrix build_lift_matrix(const ToricSurface& surface) {
  const auto& classes = surface.ray_classes();
  const size_t n = surface.size();
  const auto rank = static_cast<size_t>(surface.picard_rank());
  // Columns: classes of D_3..D_n. Since l_1, l_2 is a lattice basis these
  // form a basis of Pic, so the matrix is unimodular.
  IntMatrix m(rank, IntVec(n - 2, 0));
  for (size_t j = 2; j < n; ++j)
    for (size_t i = 0; i < rank; ++i) m[i][j - 2] = classes[j][static_cast<int>(i)];
  try {
    return unimodular_inverse(m);
  } catch (const InternalError&) {
    throw InternalError("inconsistent class tracking: ray classes do not span Pic over Z");
  }
}

IntVec apply_lift(const IntMatrix& lift, const DivisorClass& d) {
  IntVec out(lift.size() + 2, 0);
  for (size_t i = 0; i < lift.size(); ++i) {
    Int s = 0;
    for (size_t j = 0; j < lift[i].size(); ++j) s = checked_add(s, checked_mul(lift[i][j], d[static_cast<int>(j)]));
    out[i + 2] = s;
  }
  return out;
}

void require_basis(const ToricSurface& surface, const DivisorClass& d) {
  if (!(surface.basis() == d.basis())) {
    throw InvalidInput("class over " + d.basis().to_string() + " on a surface tracked over " +
                       surface.basis().to_string());
  }
}

}  // namespace

TorusDivisor lift_class(const ToricSurface& surface, const DivisorClass& d) {
  require_basis(surface, d);
  return {apply_lift(build_lift_matrix(surface), d)};
}

CohomologyTriple cohomology_all(const ToricSurface& surface, const DivisorClass& d) {
  const TorusDivisor td = lift_class(surface, d);
  CohomologyTriple c;
  c.h0 = count_sections(surface, td.d);
  c.h2 = count_sections(surface, serre_dual(td.d));
  c.h1 = c.h0 + c.h2 - euler_char(d);
  if (c.h1 < 0) throw InternalError("negative h1 for class " + d.to_string());
  return c;
}

bool vanishes_all_k(const ToricSurface& surface, const DivisorClass& d) { return cohomology_all(surface, d).vanishes(); }

bool vanishes_higher(const ToricSurface& surface, const DivisorClass& d) {
  return cohomology_all(surface, d).higher_vanish();
}

CohomologyEngine::CohomologyEngine(ToricSurface tracked)
    : surface_(std::move(tracked)), lift_matrix_(build_lift_matrix(surface_)) {}

IntVec CohomologyEngine::lift(const DivisorClass& d) const {
  require_basis(surface_, d);
  return apply_lift(lift_matrix_, d);
}

Int CohomologyEngine::cached_count(const IntVec& d) {
  {
    std::shared_lock lock(mutex_);
    if (auto it = counts_.find(d); it != counts_.end()) return it->second;
  }
  const Int value = count_sections(surface_, d);
  std::unique_lock lock(mutex_);
  counts_.emplace(d, value);
  return value;
}

Int CohomologyEngine::h0(const DivisorClass& d) { return cached_count(lift(d)); }

CohomologyTriple CohomologyEngine::of(const DivisorClass& d) {
  const IntVec td = lift(d);
  CohomologyTriple c;
  c.h0 = cached_count(td);
  c.h2 = cached_count(serre_dual(td));
  c.h1 = c.h0 + c.h2 - euler_char(d);
  if (c.h1 < 0) throw InternalError("negative h1 for class " + d.to_string());
  return c;
}

SectionBasis CohomologyEngine::sections(const DivisorClass& d) const { return section_basis(surface_, lift(d)); }

}  // namespace toricseq

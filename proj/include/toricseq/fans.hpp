#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "toricseq/core.hpp"
#include "toricseq/picard.hpp"

namespace toricseq {

/// A smooth complete toric surface given by its fan: primitive rays in
/// counterclockwise order, each consecutive pair a lattice basis with
/// det(l_i, l_{i+1}) = 1, winding once around the origin.
///
/// Self-intersections a_i satisfy l_{i-1} + l_{i+1} = -a_i l_i. Optionally
/// carries a class table mapping each ray D_i to its class in a declared
/// Picard basis; only surfaces built through tracked blow-up chains (or
/// Gale duality) have one.
class ToricSurface {
 public:
  /// Validates the rays; throws InvalidInput with a diagnostic.
  static ToricSurface from_rays(std::vector<Vec2> rays);

  size_t size() const { return rays_.size(); }
  int picard_rank() const { return static_cast<int>(rays_.size()) - 2; }
  const std::vector<Vec2>& rays() const { return rays_; }
  const IntVec& self_intersections() const { return self_int_; }
  Int self_intersection(size_t i) const { return self_int_[i]; }

  /// D_i . D_j for torus-invariant prime divisors.
  Int toric_intersection(size_t i, size_t j) const;

  bool tracked() const { return classes_.has_value(); }
  const std::vector<DivisorClass>& ray_classes() const;
  const SurfaceBasis& basis() const;

  /// Attaches a class table after checking it against the fan: intersection
  /// numbers, the two linear relations from characters, and sum = -K.
  ToricSurface with_tracking(std::vector<DivisorClass> classes) const;
  ToricSurface without_tracking() const;

  /// Same fan with the ray list rotated so that old index k becomes 0.
  ToricSurface rotated(size_t k) const;

  friend bool operator==(const ToricSurface& x, const ToricSurface& y) {
    return x.rays_ == y.rays_ && x.classes_ == y.classes_;
  }

 private:
  ToricSurface() = default;

  std::vector<Vec2> rays_;
  IntVec self_int_;
  std::optional<std::vector<DivisorClass>> classes_;
};

inline ToricSurface validate_fan(std::vector<Vec2> rays) { return ToricSurface::from_rays(std::move(rays)); }

/// Inserts l_i + l_{i+1} after ray i. Tracked surfaces gain a fresh R.
ToricSurface blow_up(const ToricSurface& surface, size_t cone);

/// Removes a (-1)-ray. Tracking survives only when the ray carries the last
/// exceptional generator (the inverse of a tracked blow_up).
ToricSurface blow_down(const ToricSurface& surface, size_t ray);

/// Removes a set of pairwise non-adjacent (-1)-rays at once.
ToricSurface simultaneous_blow_down(const ToricSurface& surface, std::vector<size_t> rays);

struct BlowDownChain {
  std::vector<ToricSurface> stages;           // stages[0] is the input surface
  std::vector<std::vector<Vec2>> removed;     // rays removed in each round
  size_t rounds() const { return removed.size(); }
};

/// All sequences of at most max_rounds simultaneous blow-downs that end at a
/// fan with 3 or 4 rays.
std::vector<BlowDownChain> blow_down_chains(const ToricSurface& surface, int max_rounds);

bool anticanonical_nef(const ToricSurface& surface);

/// Lexicographically least self-intersection sequence over rotations and
/// reflection; a complete isomorphism invariant of smooth complete surfaces.
IntVec canonical_form(const IntVec& self_intersections);
IntVec canonical_form(const ToricSurface& surface);

/// Rebuilds a fan from its self-intersection cycle, starting (1,0), (0,1).
ToricSurface surface_from_self_intersections(const IntVec& self_intersections);

/// Blow-up census from P^2 and F_0, F_1, F_2: all surfaces with at most
/// max_rays rays, optionally restricted to self-intersections >= -2.
/// Sorted by (ray count, canonical form); one representative per class.
std::vector<ToricSurface> enumerate_blowups(size_t max_rays, bool nef_only);
std::vector<ToricSurface> enumerate_blowups_serial(size_t max_rays, bool nef_only);

/// The toric weak del Pezzo surfaces (all a_i >= -2).
std::vector<ToricSurface> enumerate_weak_del_pezzo();

// -- class tracking ---------------------------------------------------------

/// P^2 with rays (1,0), (0,1), (-1,-1), each of class H.
ToricSurface tracked_p2();
/// F_a with rays (1,0), (0,1), (-1,a), (0,-1) and classes P, Q-aP, P, Q.
ToricSurface tracked_hirzebruch(Int a);
/// Attaches the standard basis to a 3-ray or 4-ray fan.
ToricSurface with_minimal_tracking(const ToricSurface& minimal);

/// A sequence of single blow-downs from a surface to a fan with <= 4 rays.
struct MinimalModelChain {
  ToricSurface minimal;
  std::vector<Vec2> removed;  // in blow-down order
};

/// Every order of single (-1)-ray blow-downs reaching 4 rays, plus the
/// continuation to P^2 whenever the 4-ray fan is F_1.
std::vector<MinimalModelChain> minimal_model_chains(const ToricSurface& surface);

/// Replays a chain as tracked blow-ups of its minimal model. The resulting
/// surface has the same rays as the chain's source, possibly rotated.
ToricSurface track_chain(const MinimalModelChain& chain);

// -- I/O ----------------------------------------------------------------------

/// Parses "1,0;0,1;-1,-1".
std::vector<Vec2> parse_rays(const std::string& text);
nlohmann::ordered_json to_json(const ToricSurface& surface);
std::vector<Vec2> rays_from_json(const nlohmann::ordered_json& j);

}  // namespace toricseq

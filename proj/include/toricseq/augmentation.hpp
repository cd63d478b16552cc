#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toricseq/fans.hpp"
#include "toricseq/toric_systems.hpp"

namespace toricseq {

enum class PointKind {
  kTorusFixed,     // cone index in the current tracked fan
  kFresh,          // abstract: a general point of the current surface
  kInfinitesimal,  // abstract: a point on the exceptional curve of an earlier step
};

struct BlowupStep {
  PointKind kind = PointKind::kFresh;
  size_t cone = 0;  // kTorusFixed
  size_t on = 0;    // kInfinitesimal: 1-based index of an earlier step
};

/// X_t -> ... -> X_0 with X_0 = P^2 or F_a. In toric mode every step is a
/// torus-fixed point and the structure carries the tracked model.
class BlowupStructure {
 public:
  static BlowupStructure p2(std::vector<BlowupStep> steps = {});
  static BlowupStructure hirzebruch(Int a, std::vector<BlowupStep> steps = {});
  /// Toric structure replaying a chain on its own minimal model.
  static BlowupStructure from_chain(const MinimalModelChain& chain);

  BaseKind base() const { return base_; }
  Int a() const { return a_; }
  const std::vector<BlowupStep>& steps() const { return steps_; }
  size_t t() const { return steps_.size(); }
  bool toric() const;

  SurfaceBasis base_basis() const;
  SurfaceBasis final_basis() const;

  /// Tracked surface after all steps; toric mode only.
  const ToricSurface& surface() const;
  /// Steps expressed abstractly. A torus-fixed step whose cone touches the
  /// ray created by step j becomes infinitesimal-on(j).
  std::vector<BlowupStep> abstract_steps() const;

  /// "c0,c2,c5" (torus-fixed cones), "f,f,i1" (fresh, infinitesimal-on).
  static std::vector<BlowupStep> parse_steps(const std::string& text);
  std::string steps_string() const;

 private:
  BlowupStructure(BaseKind base, Int a, std::vector<BlowupStep> steps, std::optional<ToricSurface> model);

  BaseKind base_ = BaseKind::kP2;
  Int a_ = 0;
  std::vector<BlowupStep> steps_;
  std::optional<ToricSurface> surface_;
  std::vector<size_t> created_ray_;  // toric: index in the final fan of the ray of each step
};

/// Inserts R before position p (0-based, cyclic) and subtracts R from both
/// neighbours. The enlarged basis is system.basis().blown_up().
ToricSystem augment(const ToricSystem& system, size_t position);
/// Same with an explicit R over the enlarged basis.
ToricSystem augment(const ToricSystem& system, size_t position, const DivisorClass& r);

struct SRange {
  Int lo = -2;
  Int hi = 0;
  /// Default bound -2 <= s <= a+1.
  static SRange standard(Int a) { return {-2, a + 1}; }
};

/// Base systems of a structure: (H,H,H), or the F_a family over the range.
std::vector<std::pair<Int, ToricSystem>> base_systems(const BlowupStructure& structure, SRange range);

struct AugmentedSystem {
  ToricSystem system;
  Int s = 0;                        // base parameter, 0 for P^2
  std::vector<size_t> positions;    // insertion position per step
};

/// Every base system and every sequence of insertion positions, deduplicated
/// by the rotation/reversal canonical form.
std::vector<AugmentedSystem> enumerate_standard_augmentations(const BlowupStructure& structure, SRange range);

/// (R_t, R_{t-1}-R_t, ..., R_1-R_2, H-R_1, H, H-sum R_i) over P^2 blown up t
/// times at points of P^2 itself.
ToricSystem blowup_once_system(const BlowupStructure& structure);

/// The two-round display: steps 1..r on the base, steps r+1..t on the
/// second level. s is ignored over P^2.
ToricSystem two_step_system(const BlowupStructure& structure, size_t r, Int s = 0);

/// Toric structure blowing up t distinct torus-fixed points of the base
/// (t <= 3 over P^2, t <= 4 over F_a), in cone order.
BlowupStructure distinct_fixed_points(BaseKind base, Int a, size_t t);

}  // namespace toricseq

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "toricseq/quivers.hpp"
#include "toricseq/rational.hpp"

namespace toricseq {

/// A point of P^2 with rational homogeneous coordinates.
struct ProjPoint {
  std::array<Rational, 3> coords;
  bool same_point(const ProjPoint& other) const;
};

struct PointConfig {
  std::vector<ProjPoint> points;
  size_t t() const { return points.size(); }
  /// Throws InvalidInput on zero vectors or coincident points.
  void validate() const;

  /// Parses "1,0,0;0,1,0;1/2,1,-3".
  static PointConfig parse(const std::string& text);
  /// The t <= 3 coordinate points.
  static PointConfig torus_fixed(size_t t);
  /// Integer coordinates in [-9, 9] from a seeded generator, pairwise distinct.
  static PointConfig random(size_t t, std::uint64_t seed);
  /// The same points under a common linear change of coordinates.
  PointConfig transformed(const QMatrix& g) const;
};

/// Monomials x, y, z in degree 1; x^2, xy, xz, y^2, yz, z^2 in degree 2.
struct FormSpace {
  int degree = 1;
  std::vector<QVector> basis;
  size_t dim() const { return basis.size(); }
};

/// Linear forms vanishing at the point.
FormSpace hyperplane_space(const ProjPoint& point);

struct KernelBasis {
  std::string map;  // e.g. "H_1 (x) V* -> S^2 V*"
  size_t domain_dim = 0;
  std::vector<QVector> basis;
  size_t dim() const { return basis.size(); }
};

/// The three generator families of the relation ideal.
struct RelationIdeal {
  std::vector<KernelBasis> per_point;  // ker(H_i (x) V* -> S^2 V*)
  KernelBasis hyperplane_sum;          // ker(sum H_i -> V*)
  KernelBasis antisymmetric;           // ker(V* (x) V* -> S^2 V*)
};

RelationIdeal relation_ideal(const PointConfig& config);

/// One Hom space e_j A_X e_i with its dimension.
struct HomEntry {
  std::string space;
  std::string identification;
  Int dim = 0;
};

struct AlgebraDimension {
  std::vector<HomEntry> entries;
  Int total = 0;
};

/// dim A_X from the Hom-space identifications; each map rank is computed.
AlgebraDimension algebra_dimension_report(const PointConfig& config);
Int algebra_dimension(const PointConfig& config);

/// dim A of the free path algebra on the blow-up quiver: 18t + 6 by count.
Quiver blowup_figure_quiver(size_t t);

/// Degree-wise accounting of dim A - dim A_X through the generators.
struct IdealAccounting {
  Int dim_a = 0;
  Int dim_ax = 0;
  Int degree2_kernel = 0;           // sum H_i -> V*
  Int per_point_kernels = 0;        // sum over i of ker(H_i (x) V* -> S^2 V*)
  Int degree3_ideal = 0;            // ker((sum H_i) (x) V* -> S^2 V*)
  Int degree3_generated = 0;        // rank of the span of the generators there
  bool generators_suffice = false;  // degree3_generated == degree3_ideal
  Int cokernels = 0;                // parts of A_X not reached by paths
  Int ideal_total() const { return degree2_kernel + per_point_kernels + degree3_ideal - cokernels; }
};

IdealAccounting ideal_accounting(const PointConfig& config);

// -- parameter algebras ------------------------------------------------------

/// Middle arrows l_0..l_{k+1} as drawn, or l_0..l_k.
enum class MiddleConvention { kPrinted, kMatched };

struct ParamAlgebra {
  Int k = 0;
  std::vector<Rational> p;
  std::vector<Rational> q;
  MiddleConvention convention = MiddleConvention::kPrinted;

  size_t middle_arrows() const;
  /// Relations whose coefficient is nonzero.
  BoundQuiver bound_quiver() const;
};

ParamAlgebra mk_algebra(Int k, std::vector<Rational> p, std::vector<Rational> q,
                        MiddleConvention convention = MiddleConvention::kPrinted);
/// p_s = q_s = 0, every other parameter 1.
BoundQuiver specialize(Int k, Int s, MiddleConvention convention = MiddleConvention::kPrinted);

struct ConventionCheck {
  MiddleConvention convention;
  bool isomorphic = false;
  size_t specialized_relations = 0;
  size_t computed_quadratic_relations = 0;
  size_t computed_higher_relations = 0;
  bool matches() const { return isomorphic && specialized_relations == computed_quadratic_relations; }
};

struct ConventionReport {
  Int k = 0;
  Int s = 0;
  Int a = 0;
  std::vector<ConventionCheck> checks;
};

/// Compares both conventions with the quiver computed from the F_a system
/// (P, sP+Q, P, -(a+s)P+Q), a = k-1-2s.
ConventionReport reconcile_convention(Int k, Int s);

nlohmann::ordered_json to_json(const RelationIdeal& ideal);
nlohmann::ordered_json to_json(const AlgebraDimension& dims);
nlohmann::ordered_json to_json(const IdealAccounting& acc);
nlohmann::ordered_json to_json(const ConventionReport& report);

}  // namespace toricseq

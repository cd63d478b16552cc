#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "toricseq/lattice.hpp"
#include "toricseq/toric_systems.hpp"

namespace toricseq {

struct Arrow {
  size_t src = 0;
  size_t dst = 0;
  std::string label;
  std::optional<Vec2> character;  // toric mode
  bool boundary = false;          // cyclic mode: generator of Hom(E_i, E_{i+n})

  friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// lhs = rhs, each a path given as arrow indices in traversal order.
struct Relation {
  std::vector<size_t> lhs;
  std::vector<size_t> rhs;
  friend bool operator==(const Relation&, const Relation&) = default;
};

struct RelationSet {
  std::vector<Relation> relations;
  size_t size() const { return relations.size(); }
  friend bool operator==(const RelationSet&, const RelationSet&) = default;
};

struct Quiver {
  size_t vertex_count = 0;
  std::vector<Arrow> arrows;
  bool cyclic = false;  // loops and back-arrows allowed

  IntMatrix multiplicities() const;
  Int arrow_count(size_t src, size_t dst) const;
  /// Sorts arrows by (src, dst, label); returns old index -> new index.
  std::vector<size_t> normalize();
  friend bool operator==(const Quiver&, const Quiver&) = default;
};

struct BoundQuiver {
  Quiver quiver;
  RelationSet relations;
  friend bool operator==(const BoundQuiver&, const BoundQuiver&) = default;
};

/// Plain quiver from an edge list; fixtures and tests.
Quiver quiver_from_edges(size_t vertex_count, const std::vector<std::pair<size_t, size_t>>& edges, bool cyclic = false);

/// (i,j) -> h0(E_j - E_i) above the diagonal, 1 on it, 0 below.
IntMatrix hom_matrix(const ExceptionalSeq& seq, const ToricSurface& surface, bool verify = false);

/// Minimal generators of the section algebra as arrows, relations from
/// parallel paths with equal characters.
BoundQuiver build_quiver(const ExceptionalSeq& seq, const ToricSurface& surface);
/// Same over one period of the helix E_{k+n} = E_k - K, arrows mod n.
BoundQuiver build_cyclic_quiver(const ToricSystem& system, const ToricSurface& surface);

/// Abelian G = Z_{d_1} x ... x Z_{d_r} acting on C^3 with weights w_1,w_2,w_3.
struct McKayInput {
  IntVec orders;
  std::vector<IntVec> weights;  // three elements of G
};

/// Vertices are the elements of G in mixed-radix order.
Quiver mckay_quiver(const McKayInput& input);

/// Vertex bijection matching all arrow multiplicities; at most 12 vertices.
bool quiver_isomorphic(const Quiver& q1, const Quiver& q2);

/// Without relations: number of paths including trivial ones (acyclic
/// quivers). With relations: n plus, per ordered pair, the number of
/// distinct path characters (toric labels required).
Int path_algebra_dim(const Quiver& quiver, const RelationSet* relations = nullptr);

std::string export_dot(const BoundQuiver& q);
nlohmann::ordered_json to_json(const BoundQuiver& q);
std::string export_json(const BoundQuiver& q);
BoundQuiver parse_quiver_json(const std::string& text);
BoundQuiver quiver_from_json(const nlohmann::ordered_json& j);

}  // namespace toricseq

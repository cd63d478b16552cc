#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "toricseq/augmentation.hpp"
#include "toricseq/cohomology.hpp"
#include "toricseq/toric_systems.hpp"

namespace toricseq {

/// One failing condition: an interval A_start, ..., A_{start+length-1}
/// (0-based, cyclic) of the system rotated by `rotation`, the class tested
/// and its cohomology.
struct Witness {
  std::string condition;  // "h*(-S)" or "h>0(S)"
  size_t rotation = 0;
  size_t start = 0;
  size_t length = 0;
  DivisorClass divisor;
  CohomologyTriple cohomology;
};

struct CheckReport {
  bool verdict = true;
  std::vector<Witness> witnesses;
  explicit operator bool() const { return verdict; }
};

/// Every interval I of {1..n-1}: -sum_I A_i has no cohomology.
CheckReport check_exceptional(const ToricSystem& system, const ToricSurface& surface);
/// Additionally h^1 = h^2 = 0 for +sum_I A_i.
CheckReport check_strongly_exceptional(const ToricSystem& system, const ToricSurface& surface);
/// Every rotation passes check_strongly_exceptional.
CheckReport check_cyclic_strong(const ToricSystem& system, const ToricSurface& surface);

/// Early-exit predicates over a shared engine.
bool is_strongly_exceptional(const ToricSystem& system, CohomologyEngine& engine);
bool is_cyclic_strong(const ToricSystem& system, CohomologyEngine& engine);

/// Re-evaluates a witness from scratch.
bool witness_reproduces(const Witness& w, const ToricSurface& surface);

struct Decision {
  bool verdict = false;
  std::optional<BlowDownChain> chain;  // strong mode: a chain to a Hirzebruch surface
  std::string reason;
};

/// P^2, or at most two rounds of simultaneous blow-downs reach 4 rays.
Decision decide_sE_existence_toric(const ToricSurface& surface);
/// -K nef, i.e. every self-intersection >= -2.
Decision decide_cyclic_existence_toric(const ToricSurface& surface);

struct SearchOptions {
  std::optional<SRange> s_range;  // default -2 <= s <= a+1 per chain
  bool prune = true;              // cut branches with some A_i^2 < -2
  size_t max_nodes = 0;           // 0 = unlimited
};

struct CyclicHit {
  size_t chain = 0;        // index into the surface's minimal model chains
  Int s = 0;
  ToricSystem system;      // canonical under rotation and reversal
  IntVec associated_type;  // canonical form of the Gale-dual surface
};

struct SearchResult {
  std::vector<CyclicHit> hits;
  std::vector<IntVec> associated_types;  // sorted, distinct
  size_t chains = 0;
  size_t nodes = 0;
  size_t leaves = 0;
  bool truncated = false;
};

/// Standard augmentations over all blow-down chains that are cyclic
/// strongly exceptional.
SearchResult search_cyclic_systems(const ToricSurface& surface, const SearchOptions& options = {});
SearchResult search_cyclic_systems_serial(const ToricSurface& surface, const SearchOptions& options = {});

struct ExhaustiveComparison {
  size_t exhaustive_count = 0;              // cyclic systems with coefficients in the box
  std::vector<std::string> missing_in_search;  // found only by direct enumeration
  std::vector<std::string> missing_in_box;     // search hits inside the box not enumerated
  std::vector<IntVec> exhaustive_types;
};

/// Direct enumeration of cyclic strongly exceptional systems with all
/// coefficients in [-bound, bound], compared with the augmentation search in
/// torus-divisor coordinates up to the symmetries of the fan. Rank <= 3 only.
ExhaustiveComparison exhaustive_cyclic_crosscheck(const ToricSurface& surface, Int bound);

nlohmann::ordered_json to_json(const CheckReport& report);
nlohmann::ordered_json to_json(const Decision& decision);
nlohmann::ordered_json to_json(const SearchResult& result, bool with_hits);

}  // namespace toricseq

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "toricseq/fans.hpp"
#include "toricseq/picard.hpp"

namespace toricseq {

/// A cyclic list A_1..A_n of classes over one basis. Validity (the three
/// intersection axioms) is checked by validate(), not enforced here, so that
/// invalid candidates can be represented and diagnosed.
class ToricSystem {
 public:
  explicit ToricSystem(std::vector<DivisorClass> classes);

  size_t size() const { return classes_.size(); }
  const std::vector<DivisorClass>& classes() const { return classes_; }
  const DivisorClass& operator[](size_t i) const { return classes_[i]; }
  const SurfaceBasis& basis() const { return classes_.front().basis(); }

  /// A_i^2; equals the self-intersections of the Gale-dual surface.
  IntVec self_intersections() const;
  std::string to_string() const;

  friend bool operator==(const ToricSystem&, const ToricSystem&) = default;
  friend auto operator<=>(const ToricSystem& x, const ToricSystem& y) { return x.classes_ <=> y.classes_; }

 private:
  std::vector<DivisorClass> classes_;
};

/// E_1..E_n; exceptionality is a property checked elsewhere.
struct ExceptionalSeq {
  std::vector<DivisorClass> divisors;
};

struct SystemValidation {
  bool valid = false;
  std::string diagnostic;  // first failing condition, empty when valid
  explicit operator bool() const { return valid; }
};

SystemValidation validate(const ToricSystem& system);

/// A_i = E_{i+1} - E_i, closed by A_n = -K - sum of the others.
ToricSystem from_sequence(const ExceptionalSeq& seq);
/// E_1 = 0, E_{k+1} = A_1 + ... + A_k.
ExceptionalSeq to_sequence(const ToricSystem& system);

/// Surface with rays l_i = images of the unit vectors in coker(D -> (A_i.D)),
/// normalized to l_1 = (1,0), l_2 = (0,1). Throws InvalidInput for an
/// invalid system and InternalError if the cokernel is not Z^2.
ToricSurface gale_dual(const ToricSystem& system);

ToricSystem rotate(const ToricSystem& system, Int k);
ToricSystem reverse(const ToricSystem& system);
/// (A_{n-1}, ..., A_1, A_n): the system of O(-E_n), ..., O(-E_1).
ToricSystem dual_system(const ToricSystem& system);

/// Least representative under rotation and reversal.
ToricSystem canonical_system(const ToricSystem& system);

/// (H, H, H) on P^2.
ToricSystem p2_system();
/// (P, sP+Q, P, -(a+s)P+Q) on F_a.
ToricSystem hirzebruch_system(Int a, Int s);

/// Moves a system over a basis with more exceptional generators.
ToricSystem pulled_back(const ToricSystem& system, const SurfaceBasis& larger);

nlohmann::ordered_json to_json(const ToricSystem& system);
ToricSystem system_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json to_json(const ExceptionalSeq& seq);

}  // namespace toricseq

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "toricseq/core.hpp"

namespace toricseq {

enum class BaseKind { kP2, kHirzebruch };

/// Basis of the Picard lattice of a rational surface obtained from a minimal
/// model by t point blow-ups: (H, R_1..R_t) over P^2, (P, Q, R_1..R_t) over F_a.
/// Bases are nominal: P2(t) and Hirzebruch(1, t-1) are never identified.
struct SurfaceBasis {
  BaseKind kind = BaseKind::kP2;
  Int a = 0;
  Int t = 0;

  static SurfaceBasis p2(Int t = 0);
  static SurfaceBasis hirzebruch(Int a, Int t = 0);

  int rank() const { return static_cast<int>((kind == BaseKind::kP2 ? 1 : 2) + t); }
  /// Index of the first exceptional generator R_1.
  int first_exceptional() const { return kind == BaseKind::kP2 ? 1 : 2; }
  SurfaceBasis blown_up(Int extra = 1) const;
  std::string generator_name(int i) const;
  std::string to_string() const;

  friend bool operator==(const SurfaceBasis&, const SurfaceBasis&) = default;
};

/// An element of Pic(X) written over a declared basis.
class DivisorClass {
 public:
  DivisorClass() = default;
  DivisorClass(SurfaceBasis basis, IntVec coeffs);

  static DivisorClass zero(const SurfaceBasis& basis);
  static DivisorClass generator(const SurfaceBasis& basis, int i);
  /// Shorthands: H, P, Q and the exceptional class R_i (1-based).
  static DivisorClass h(const SurfaceBasis& basis);
  static DivisorClass p(const SurfaceBasis& basis);
  static DivisorClass q(const SurfaceBasis& basis);
  static DivisorClass r(const SurfaceBasis& basis, int i);

  const SurfaceBasis& basis() const { return basis_; }
  const IntVec& coeffs() const { return coeffs_; }
  Int operator[](int i) const { return coeffs_[static_cast<size_t>(i)]; }
  bool is_zero() const;

  /// Total transform along further blow-ups: same coefficients over a basis
  /// with more exceptional generators.
  DivisorClass pulled_back(const SurfaceBasis& larger) const;

  DivisorClass operator-() const;
  DivisorClass& operator+=(const DivisorClass& other);
  DivisorClass& operator-=(const DivisorClass& other);
  friend DivisorClass operator+(DivisorClass lhs, const DivisorClass& rhs) { return lhs += rhs; }
  friend DivisorClass operator-(DivisorClass lhs, const DivisorClass& rhs) { return lhs -= rhs; }
  friend DivisorClass operator*(Int k, const DivisorClass& d);
  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
  friend auto operator<=>(const DivisorClass& x, const DivisorClass& y) { return x.coeffs_ <=> y.coeffs_; }

  /// Human-readable form such as "2H-R1-R2".
  std::string to_string() const;

 private:
  void require_same_basis(const DivisorClass& other) const;

  SurfaceBasis basis_;
  IntVec coeffs_;
};

/// Symmetric Gram matrix of the intersection form.
struct IntersectionForm {
  std::vector<IntVec> gram;
  static IntersectionForm of(const SurfaceBasis& basis);
};

Int intersect(const DivisorClass& d, const DivisorClass& e);
DivisorClass canonical_class(const SurfaceBasis& basis);
/// Riemann-Roch: chi(D) = 1 + (D^2 - K.D) / 2.
Int euler_char(const DivisorClass& d);

nlohmann::ordered_json to_json(const SurfaceBasis& basis);
nlohmann::ordered_json to_json(const DivisorClass& d);
SurfaceBasis basis_from_json(const nlohmann::ordered_json& j);
DivisorClass divisor_from_json(const nlohmann::ordered_json& j);

/// Parses "P2:t" or "Fa:a:t" (t optional).
SurfaceBasis parse_basis(const std::string& text);

}  // namespace toricseq

#include "toricseq/picard.hpp"

#include <sstream>

namespace toricseq {

std::string to_string(const Vec2& v) {
  return "(" + std::to_string(v[0]) + "," + std::to_string(v[1]) + ")";
}

std::string to_string(const IntVec& v) {
  std::string out = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + ")";
}

SurfaceBasis SurfaceBasis::p2(Int t) {
  if (t < 0) throw InvalidInput("blow-up count must be non-negative");
  return SurfaceBasis{BaseKind::kP2, 0, t};
}

SurfaceBasis SurfaceBasis::hirzebruch(Int a, Int t) {
  if (a < 0 || t < 0) throw InvalidInput("Hirzebruch parameter and blow-up count must be non-negative");
  return SurfaceBasis{BaseKind::kHirzebruch, a, t};
}

SurfaceBasis SurfaceBasis::blown_up(Int extra) const {
  SurfaceBasis b = *this;
  b.t += extra;
  return b;
}

std::string SurfaceBasis::generator_name(int i) const {
  const int first = first_exceptional();
  if (i >= first) return "R" + std::to_string(i - first + 1);
  if (kind == BaseKind::kP2) return "H";
  return i == 0 ? "P" : "Q";
}

std::string SurfaceBasis::to_string() const {
  if (kind == BaseKind::kP2) return "P2:" + std::to_string(t);
  return "Fa:" + std::to_string(a) + ":" + std::to_string(t);
}

DivisorClass::DivisorClass(SurfaceBasis basis, IntVec coeffs) : basis_(basis), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != basis_.rank()) {
    throw InvalidInput("coefficient vector of length " + std::to_string(coeffs_.size()) +
                       " does not match basis rank " + std::to_string(basis_.rank()));
  }
}

DivisorClass DivisorClass::zero(const SurfaceBasis& basis) {
  return DivisorClass(basis, IntVec(static_cast<size_t>(basis.rank()), 0));
}

DivisorClass DivisorClass::generator(const SurfaceBasis& basis, int i) {
  if (i < 0 || i >= basis.rank()) throw InvalidInput("generator index out of range");
  DivisorClass d = zero(basis);
  d.coeffs_[static_cast<size_t>(i)] = 1;
  return d;
}

DivisorClass DivisorClass::h(const SurfaceBasis& basis) {
  if (basis.kind != BaseKind::kP2) throw InvalidInput("H exists only over a P2 basis");
  return generator(basis, 0);
}

DivisorClass DivisorClass::p(const SurfaceBasis& basis) {
  if (basis.kind != BaseKind::kHirzebruch) throw InvalidInput("P exists only over a Hirzebruch basis");
  return generator(basis, 0);
}

DivisorClass DivisorClass::q(const SurfaceBasis& basis) {
  if (basis.kind != BaseKind::kHirzebruch) throw InvalidInput("Q exists only over a Hirzebruch basis");
  return generator(basis, 1);
}

DivisorClass DivisorClass::r(const SurfaceBasis& basis, int i) {
  if (i < 1 || i > basis.t) throw InvalidInput("exceptional index out of range");
  return generator(basis, basis.first_exceptional() + i - 1);
}

bool DivisorClass::is_zero() const {
  for (Int c : coeffs_)
    if (c != 0) return false;
  return true;
}

DivisorClass DivisorClass::pulled_back(const SurfaceBasis& larger) const {
  if (larger.kind != basis_.kind || larger.a != basis_.a || larger.t < basis_.t) {
    throw InvalidInput("cannot pull back from " + basis_.to_string() + " to " + larger.to_string());
  }
  IntVec c = coeffs_;
  c.resize(static_cast<size_t>(larger.rank()), 0);
  return DivisorClass(larger, std::move(c));
}

void DivisorClass::require_same_basis(const DivisorClass& other) const {
  if (!(basis_ == other.basis_)) {
    throw InvalidInput("basis mismatch: " + basis_.to_string() + " vs " + other.basis_.to_string());
  }
}

DivisorClass DivisorClass::operator-() const {
  DivisorClass d = *this;
  for (Int& c : d.coeffs_) c = checked_sub(0, c);
  return d;
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& other) {
  require_same_basis(other);
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = checked_add(coeffs_[i], other.coeffs_[i]);
  return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& other) {
  require_same_basis(other);
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = checked_sub(coeffs_[i], other.coeffs_[i]);
  return *this;
}

DivisorClass operator*(Int k, const DivisorClass& d) {
  DivisorClass out = d;
  for (Int& c : out.coeffs_) c = checked_mul(k, c);
  return out;
}

std::string DivisorClass::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < basis_.rank(); ++i) {
    Int c = coeffs_[static_cast<size_t>(i)];
    if (c == 0) continue;
    if (c < 0) os << "-";
    else if (!first) os << "+";
    if (c != 1 && c != -1) os << (c < 0 ? -c : c);
    os << basis_.generator_name(i);
    first = false;
  }
  return first ? "0" : os.str();
}

IntersectionForm IntersectionForm::of(const SurfaceBasis& basis) {
  const auto r = static_cast<size_t>(basis.rank());
  IntersectionForm f;
  f.gram.assign(r, IntVec(r, 0));
  if (basis.kind == BaseKind::kP2) {
    f.gram[0][0] = 1;
  } else {
    f.gram[0][0] = 0;
    f.gram[1][1] = basis.a;
    f.gram[0][1] = f.gram[1][0] = 1;
  }
  for (auto i = static_cast<size_t>(basis.first_exceptional()); i < r; ++i) f.gram[i][i] = -1;
  return f;
}

Int intersect(const DivisorClass& d, const DivisorClass& e) {
  if (!(d.basis() == e.basis())) {
    throw InvalidInput("basis mismatch: " + d.basis().to_string() + " vs " + e.basis().to_string());
  }
  const SurfaceBasis& b = d.basis();
  // Gram matrix is block diagonal: a 1x1 or 2x2 base block plus -1 on the R_i.
  Int v = 0;
  if (b.kind == BaseKind::kP2) {
    v = checked_mul(d[0], e[0]);
  } else {
    v = checked_add(checked_mul(d[0], e[1]), checked_mul(d[1], e[0]));
    v = checked_add(v, checked_mul(b.a, checked_mul(d[1], e[1])));
  }
  for (int i = b.first_exceptional(); i < b.rank(); ++i) v = checked_sub(v, checked_mul(d[i], e[i]));
  return v;
}

DivisorClass canonical_class(const SurfaceBasis& basis) {
  // K = -3H + sum R_i, resp. K = -2Q + (a-2)P + sum R_i: the unique class with
  // -K equal to the sum of the standard toric system on the minimal model.
  IntVec c(static_cast<size_t>(basis.rank()), 1);
  if (basis.kind == BaseKind::kP2) {
    c[0] = -3;
  } else {
    c[0] = basis.a - 2;
    c[1] = -2;
  }
  return DivisorClass(basis, std::move(c));
}

Int euler_char(const DivisorClass& d) {
  const Int twice = checked_sub(intersect(d, d), intersect(canonical_class(d.basis()), d));
  if (twice % 2 != 0) throw InternalError("D^2 - K.D is odd for " + d.to_string());
  return 1 + twice / 2;
}

nlohmann::ordered_json to_json(const SurfaceBasis& basis) {
  nlohmann::ordered_json j;
  if (basis.kind == BaseKind::kP2) {
    j["kind"] = "P2";
  } else {
    j["kind"] = "Fa";
    j["a"] = basis.a;
  }
  j["t"] = basis.t;
  return j;
}

nlohmann::ordered_json to_json(const DivisorClass& d) {
  nlohmann::ordered_json j;
  j["basis"] = to_json(d.basis());
  j["coeffs"] = d.coeffs();
  return j;
}

SurfaceBasis basis_from_json(const nlohmann::ordered_json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const Int t = j.value("t", Int{0});
  if (kind == "P2") return SurfaceBasis::p2(t);
  if (kind == "Fa") return SurfaceBasis::hirzebruch(j.at("a").get<Int>(), t);
  throw InvalidInput("unknown basis kind '" + kind + "'");
}

DivisorClass divisor_from_json(const nlohmann::ordered_json& j) {
  return DivisorClass(basis_from_json(j.at("basis")), j.at("coeffs").get<IntVec>());
}

SurfaceBasis parse_basis(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  try {
    if (!parts.empty() && parts[0] == "P2" && parts.size() <= 2) {
      return SurfaceBasis::p2(parts.size() == 2 ? std::stoll(parts[1]) : 0);
    }
    if (!parts.empty() && parts[0] == "Fa" && parts.size() >= 2 && parts.size() <= 3) {
      return SurfaceBasis::hirzebruch(std::stoll(parts[1]), parts.size() == 3 ? std::stoll(parts[2]) : 0);
    }
  } catch (const std::logic_error&) {
  }
  throw InvalidInput("cannot parse basis '" + text + "' (expected P2[:t] or Fa:a[:t])");
}

}  // namespace toricseq

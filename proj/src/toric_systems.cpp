#include "toricseq/toric_systems.hpp"

#include <algorithm>

#include "toricseq/lattice.hpp"

namespace toricseq {

ToricSystem::ToricSystem(std::vector<DivisorClass> classes) : classes_(std::move(classes)) {
  if (classes_.empty()) throw InvalidInput("a toric system needs at least one class");
  for (const auto& d : classes_)
    if (!(d.basis() == classes_.front().basis())) throw InvalidInput("toric system classes must share one basis");
}

IntVec ToricSystem::self_intersections() const {
  IntVec a;
  a.reserve(size());
  for (const auto& d : classes_) a.push_back(intersect(d, d));
  return a;
}

std::string ToricSystem::to_string() const {
  std::string out;
  for (size_t i = 0; i < size(); ++i) {
    if (i) out += ", ";
    out += classes_[i].to_string();
  }
  return out;
}

SystemValidation validate(const ToricSystem& system) {
  const size_t n = system.size();
  const auto label = [](size_t i) { return "A" + std::to_string(i + 1); };
  if (static_cast<int>(n) != system.basis().rank() + 2) {
    return {false, "length " + std::to_string(n) + " differs from rank(Pic) + 2 = " +
                       std::to_string(system.basis().rank() + 2)};
  }
  for (size_t i = 0; i < n; ++i) {
    const size_t j = (i + 1) % n;
    const Int v = intersect(system[i], system[j]);
    if (v != 1) {
      return {false, "(i) fails: " + label(i) + "." + label(j) + " = " + std::to_string(v) + ", expected 1"};
    }
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      const Int v = intersect(system[i], system[j]);
      if (v != 0) {
        return {false, "(ii) fails: " + label(i) + "." + label(j) + " = " + std::to_string(v) + ", expected 0"};
      }
    }
  DivisorClass sum = DivisorClass::zero(system.basis());
  for (const auto& d : system.classes()) sum += d;
  const DivisorClass minus_k = -canonical_class(system.basis());
  if (sum != minus_k) {
    return {false, "(iii) fails: sum is " + sum.to_string() + ", expected -K = " + minus_k.to_string()};
  }
  return {true, {}};
}

ToricSystem from_sequence(const ExceptionalSeq& seq) {
  const size_t n = seq.divisors.size();
  if (n == 0) throw InvalidInput("empty sequence");
  const SurfaceBasis& basis = seq.divisors.front().basis();
  if (static_cast<int>(n) != basis.rank() + 2) {
    throw InvalidInput("sequence length " + std::to_string(n) + " differs from rank(Pic) + 2 = " +
                       std::to_string(basis.rank() + 2));
  }
  std::vector<DivisorClass> a;
  DivisorClass partial = DivisorClass::zero(basis);
  for (size_t i = 0; i + 1 < n; ++i) {
    a.push_back(seq.divisors[i + 1] - seq.divisors[i]);
    partial += a.back();
  }
  a.push_back(-canonical_class(basis) - partial);
  return ToricSystem(std::move(a));
}

ExceptionalSeq to_sequence(const ToricSystem& system) {
  ExceptionalSeq seq;
  DivisorClass partial = DivisorClass::zero(system.basis());
  seq.divisors.push_back(partial);
  for (size_t i = 0; i + 1 < system.size(); ++i) {
    partial += system[i];
    seq.divisors.push_back(partial);
  }
  return seq;
}

ToricSurface gale_dual(const ToricSystem& system) {
  if (auto v = validate(system); !v) throw InvalidInput("gale_dual of an invalid toric system: " + v.diagnostic);
  const size_t n = system.size();
  const SurfaceBasis& basis = system.basis();
  const auto r = static_cast<size_t>(basis.rank());
  IntMatrix a(n, IntVec(r, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < r; ++j) a[i][j] = intersect(system[i], DivisorClass::generator(basis, static_cast<int>(j)));

  // U A V = diag(1, ..., 1, 0, 0): the last two rows of U project Z^n onto
  // the cokernel.
  const SmithForm s = smith_normal_form(a);
  const bool free_rank_two = s.invariant_factors.size() == r &&
                             std::all_of(s.invariant_factors.begin(), s.invariant_factors.end(), [](Int f) { return f == 1; });
  if (!free_rank_two || n != r + 2) throw InternalError("cokernel of the toric system is not free of rank 2");
  std::vector<Vec2> rays(n);
  for (size_t i = 0; i < n; ++i) rays[i] = {s.u[r][i], s.u[r + 1][i]};

  // Change coordinates so that l_1 = (1,0), l_2 = (0,1).
  const Int det = det2(rays[0], rays[1]);
  if (det != 1 && det != -1) throw InternalError("first two Gale-dual rays are not a lattice basis");
  // Inverse of the matrix with columns l_1, l_2.
  const Int m00 = rays[1][1] * det, m01 = -rays[1][0] * det, m10 = -rays[0][1] * det, m11 = rays[0][0] * det;
  for (auto& l : rays) {
    const Vec2 old = l;
    l = {checked_add(checked_mul(m00, old[0]), checked_mul(m01, old[1])),
         checked_add(checked_mul(m10, old[0]), checked_mul(m11, old[1]))};
  }
  ToricSurface surface = ToricSurface::from_rays(std::move(rays));
  // The identification D_i <-> A_i must respect intersection numbers and the
  // character relations; with_tracking checks both.
  (void)surface.with_tracking(system.classes());
  return surface;
}

ToricSystem rotate(const ToricSystem& system, Int k) {
  const auto n = static_cast<Int>(system.size());
  const Int shift = ((k % n) + n) % n;
  std::vector<DivisorClass> c = system.classes();
  std::rotate(c.begin(), c.begin() + shift, c.end());
  return ToricSystem(std::move(c));
}

ToricSystem reverse(const ToricSystem& system) {
  std::vector<DivisorClass> c(system.classes().rbegin(), system.classes().rend());
  return ToricSystem(std::move(c));
}

ToricSystem dual_system(const ToricSystem& system) {
  std::vector<DivisorClass> c(system.classes().begin(), system.classes().end() - 1);
  std::reverse(c.begin(), c.end());
  c.push_back(system.classes().back());
  return ToricSystem(std::move(c));
}

ToricSystem canonical_system(const ToricSystem& system) {
  ToricSystem best = system;
  const ToricSystem rev = reverse(system);
  for (const ToricSystem* s : {&system, &rev})
    for (size_t k = 0; k < system.size(); ++k) {
      ToricSystem cand = rotate(*s, static_cast<Int>(k));
      if (cand < best) best = std::move(cand);
    }
  return best;
}

ToricSystem p2_system() {
  const DivisorClass h = DivisorClass::h(SurfaceBasis::p2());
  return ToricSystem({h, h, h});
}

ToricSystem hirzebruch_system(Int a, Int s) {
  const SurfaceBasis b = SurfaceBasis::hirzebruch(a);
  const DivisorClass p = DivisorClass::p(b);
  const DivisorClass q = DivisorClass::q(b);
  return ToricSystem({p, s * p + q, p, q - (a + s) * p});
}

ToricSystem pulled_back(const ToricSystem& system, const SurfaceBasis& larger) {
  std::vector<DivisorClass> c;
  for (const auto& d : system.classes()) c.push_back(d.pulled_back(larger));
  return ToricSystem(std::move(c));
}

nlohmann::ordered_json to_json(const ToricSystem& system) {
  nlohmann::ordered_json j;
  j["basis"] = to_json(system.basis());
  nlohmann::ordered_json classes = nlohmann::ordered_json::array();
  for (const auto& d : system.classes()) classes.push_back(d.coeffs());
  j["classes"] = classes;
  return j;
}

ToricSystem system_from_json(const nlohmann::ordered_json& j) {
  const SurfaceBasis basis = basis_from_json(j.at("basis"));
  std::vector<DivisorClass> classes;
  for (const auto& c : j.at("classes")) classes.emplace_back(basis, c.get<IntVec>());
  return ToricSystem(std::move(classes));
}

nlohmann::ordered_json to_json(const ExceptionalSeq& seq) {
  nlohmann::ordered_json j;
  j["basis"] = to_json(seq.divisors.front().basis());
  nlohmann::ordered_json divisors = nlohmann::ordered_json::array();
  for (const auto& d : seq.divisors) divisors.push_back(d.coeffs());
  j["divisors"] = divisors;
  return j;
}

}  // namespace toricseq

#include "toricseq/augmentation.hpp"

#include <map>
#include <sstream>

namespace toricseq {

namespace {

ToricSurface default_model(BaseKind base, Int a) { return base == BaseKind::kP2 ? tracked_p2() : tracked_hirzebruch(a); }

}  // namespace

BlowupStructure::BlowupStructure(BaseKind base, Int a, std::vector<BlowupStep> steps, std::optional<ToricSurface> model)
    : base_(base), a_(a), steps_(std::move(steps)) {
  if (base_ == BaseKind::kHirzebruch && a_ < 0) throw InvalidInput("Hirzebruch parameter must be non-negative");
  if (base_ == BaseKind::kP2) a_ = 0;
  size_t fixed = 0;
  for (size_t k = 0; k < steps_.size(); ++k) {
    const BlowupStep& s = steps_[k];
    if (s.kind == PointKind::kTorusFixed) ++fixed;
    if (s.kind == PointKind::kInfinitesimal && (s.on < 1 || s.on > k)) {
      throw InvalidInput("step " + std::to_string(k + 1) + " is infinitesimal on step " + std::to_string(s.on) +
                         ", which is not an earlier step");
    }
  }
  if (fixed != 0 && fixed != steps_.size()) throw InvalidInput("cannot mix torus-fixed and abstract steps");
  if (fixed == 0 && !steps_.empty()) return;

  ToricSurface cur = model ? *model : default_model(base_, a_);
  if (!cur.tracked()) throw InvalidInput("toric blow-up structure needs a tracked model");
  for (const BlowupStep& s : steps_) {
    if (s.cone >= cur.size()) {
      throw InvalidInput("cone " + std::to_string(s.cone) + " out of range for a fan with " + std::to_string(cur.size()) +
                         " rays");
    }
    for (auto& idx : created_ray_)
      if (idx > s.cone) ++idx;
    created_ray_.push_back(s.cone + 1);
    cur = blow_up(cur, s.cone);
  }
  surface_ = std::move(cur);
}

BlowupStructure BlowupStructure::p2(std::vector<BlowupStep> steps) {
  return BlowupStructure(BaseKind::kP2, 0, std::move(steps), std::nullopt);
}

BlowupStructure BlowupStructure::hirzebruch(Int a, std::vector<BlowupStep> steps) {
  return BlowupStructure(BaseKind::kHirzebruch, a, std::move(steps), std::nullopt);
}

BlowupStructure BlowupStructure::from_chain(const MinimalModelChain& chain) {
  ToricSurface cur = with_minimal_tracking(chain.minimal);
  const SurfaceBasis base = cur.basis();
  const ToricSurface model = cur;
  std::vector<BlowupStep> steps;
  for (auto it = chain.removed.rbegin(); it != chain.removed.rend(); ++it) {
    const size_t n = cur.size();
    size_t cone = n;
    for (size_t i = 0; i < n; ++i) {
      const Vec2& u = cur.rays()[i];
      const Vec2& v = cur.rays()[(i + 1) % n];
      if (Vec2{u[0] + v[0], u[1] + v[1]} == *it) cone = i;
    }
    if (cone == n) throw InternalError("ray " + to_string(*it) + " does not subdivide a cone of the current fan");
    steps.push_back({PointKind::kTorusFixed, cone, 0});
    cur = blow_up(cur, cone);
  }
  return BlowupStructure(base.kind, base.a, std::move(steps), model);
}

bool BlowupStructure::toric() const { return surface_.has_value(); }

SurfaceBasis BlowupStructure::base_basis() const {
  return base_ == BaseKind::kP2 ? SurfaceBasis::p2() : SurfaceBasis::hirzebruch(a_);
}

SurfaceBasis BlowupStructure::final_basis() const { return base_basis().blown_up(static_cast<Int>(t())); }

const ToricSurface& BlowupStructure::surface() const {
  if (!surface_) throw InvalidInput("blow-up structure is abstract; no toric model");
  return *surface_;
}

std::vector<BlowupStep> BlowupStructure::abstract_steps() const {
  if (!toric()) return steps_;
  std::vector<BlowupStep> out;
  // Replay the ray bookkeeping to know which created rays bound each cone.
  std::vector<size_t> created;
  size_t n = base_ == BaseKind::kP2 ? 3 : 4;
  for (const BlowupStep& s : steps_) {
    BlowupStep a{PointKind::kFresh, 0, 0};
    for (size_t j = 0; j < created.size(); ++j)
      if (created[j] == s.cone || created[j] == (s.cone + 1) % n) a = {PointKind::kInfinitesimal, 0, j + 1};
    out.push_back(a);
    for (auto& idx : created)
      if (idx > s.cone) ++idx;
    created.push_back(s.cone + 1);
    ++n;
  }
  return out;
}

std::vector<BlowupStep> BlowupStructure::parse_steps(const std::string& text) {
  std::vector<BlowupStep> steps;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    try {
      if (tok == "f") {
        steps.push_back({PointKind::kFresh, 0, 0});
      } else if (tok[0] == 'c') {
        steps.push_back({PointKind::kTorusFixed, static_cast<size_t>(std::stoull(tok.substr(1))), 0});
      } else if (tok[0] == 'i') {
        steps.push_back({PointKind::kInfinitesimal, 0, static_cast<size_t>(std::stoull(tok.substr(1)))});
      } else {
        throw InvalidInput("");
      }
    } catch (const std::exception&) {
      throw InvalidInput("bad blow-up step '" + tok + "' (expected cN, f or iJ)");
    }
  }
  return steps;
}

std::string BlowupStructure::steps_string() const {
  std::string out;
  for (const auto& s : steps_) {
    if (!out.empty()) out += ",";
    switch (s.kind) {
      case PointKind::kTorusFixed: out += "c" + std::to_string(s.cone); break;
      case PointKind::kFresh: out += "f"; break;
      case PointKind::kInfinitesimal: out += "i" + std::to_string(s.on); break;
    }
  }
  return out;
}

ToricSystem augment(const ToricSystem& system, size_t position, const DivisorClass& r) {
  const size_t n = system.size();
  if (position >= n) throw InvalidInput("insertion position " + std::to_string(position) + " out of range 0.." + std::to_string(n - 1));
  const SurfaceBasis larger = r.basis();
  if (!(larger == system.basis().blown_up())) {
    throw InvalidInput("R must live over " + system.basis().blown_up().to_string() + ", got " + larger.to_string());
  }
  std::vector<DivisorClass> c;
  c.reserve(n + 1);
  for (const auto& d : system.classes()) c.push_back(d.pulled_back(larger));
  c[(position + n - 1) % n] -= r;
  c[position] -= r;
  c.insert(c.begin() + static_cast<std::ptrdiff_t>(position), r);
  return ToricSystem(std::move(c));
}

ToricSystem augment(const ToricSystem& system, size_t position) {
  const SurfaceBasis larger = system.basis().blown_up();
  return augment(system, position, DivisorClass::r(larger, static_cast<int>(larger.t)));
}

std::vector<std::pair<Int, ToricSystem>> base_systems(const BlowupStructure& structure, SRange range) {
  std::vector<std::pair<Int, ToricSystem>> out;
  if (structure.base() == BaseKind::kP2) {
    out.emplace_back(0, p2_system());
    return out;
  }
  if (range.lo > range.hi) throw InvalidInput("empty s-range");
  for (Int s = range.lo; s <= range.hi; ++s) out.emplace_back(s, hirzebruch_system(structure.a(), s));
  return out;
}

namespace {

void grow(const ToricSystem& cur, size_t steps_left, Int s, std::vector<size_t>& positions,
          std::map<ToricSystem, AugmentedSystem>& out) {
  if (steps_left == 0) {
    ToricSystem key = canonical_system(cur);
    out.try_emplace(std::move(key), AugmentedSystem{cur, s, positions});
    return;
  }
  for (size_t p = 0; p < cur.size(); ++p) {
    positions.push_back(p);
    grow(augment(cur, p), steps_left - 1, s, positions, out);
    positions.pop_back();
  }
}

}  // namespace

std::vector<AugmentedSystem> enumerate_standard_augmentations(const BlowupStructure& structure, SRange range) {
  std::map<ToricSystem, AugmentedSystem> found;
  for (const auto& [s, base] : base_systems(structure, range)) {
    std::vector<size_t> positions;
    grow(base, structure.t(), s, positions, found);
  }
  std::vector<AugmentedSystem> out;
  out.reserve(found.size());
  for (auto& [key, value] : found) out.push_back(std::move(value));
  return out;
}

ToricSystem blowup_once_system(const BlowupStructure& structure) {
  if (structure.base() != BaseKind::kP2) throw InvalidInput("blowup_once_system needs a P^2 base");
  for (const auto& s : structure.abstract_steps())
    if (s.kind == PointKind::kInfinitesimal) throw InvalidInput("blowup_once_system needs points of P^2 only");
  const SurfaceBasis b = structure.final_basis();
  const int t = static_cast<int>(b.t);
  const DivisorClass h = DivisorClass::h(b);
  std::vector<DivisorClass> c;
  if (t > 0) c.push_back(DivisorClass::r(b, t));
  for (int i = t - 1; i >= 1; --i) c.push_back(DivisorClass::r(b, i) - DivisorClass::r(b, i + 1));
  if (t > 0) c.push_back(h - DivisorClass::r(b, 1));
  c.push_back(h);
  DivisorClass last = h;
  for (int i = 1; i <= t; ++i) last -= DivisorClass::r(b, i);
  c.push_back(last);
  if (t == 0) c.push_back(h);
  return ToricSystem(std::move(c));
}

ToricSystem two_step_system(const BlowupStructure& structure, size_t r, Int s) {
  const size_t t = structure.t();
  if (r > t) throw InvalidInput("split r = " + std::to_string(r) + " exceeds the number of steps " + std::to_string(t));
  const auto steps = structure.abstract_steps();
  for (size_t k = 0; k < t; ++k) {
    const BlowupStep& st = steps[k];
    if (st.kind != PointKind::kInfinitesimal) continue;
    if (k < r || st.on > r) throw InvalidInput("structure is not two-round for r = " + std::to_string(r));
  }
  const SurfaceBasis b = structure.final_basis();
  const auto R = [&](size_t i) { return DivisorClass::r(b, static_cast<int>(i)); };
  DivisorClass first, middle, closing;
  if (structure.base() == BaseKind::kP2) {
    first = DivisorClass::h(b);
    closing = DivisorClass::h(b);
  } else {
    const DivisorClass p = DivisorClass::p(b), q = DivisorClass::q(b);
    first = p;
    middle = s * p + q;
    closing = q - (structure.a() + s) * p;
  }
  std::vector<DivisorClass> c;
  if (r > 0) c.push_back(R(r));
  for (size_t i = r; i-- > 1;) c.push_back(R(i) - R(i + 1));
  c.push_back(r > 0 ? first - R(1) : first);
  if (structure.base() == BaseKind::kHirzebruch) c.push_back(middle);
  c.push_back(t > r ? first - R(r + 1) : first);
  for (size_t i = r + 1; i < t; ++i) c.push_back(R(i) - R(i + 1));
  if (t > r) c.push_back(R(t));
  for (size_t i = 1; i <= t; ++i) closing -= R(i);
  c.push_back(closing);
  return ToricSystem(std::move(c));
}

BlowupStructure distinct_fixed_points(BaseKind base, Int a, size_t t) {
  const size_t n = base == BaseKind::kP2 ? 3 : 4;
  if (t > n) throw InvalidInput("only " + std::to_string(n) + " torus-fixed points on the base");
  std::vector<BlowupStep> steps;
  // Each earlier blow-up shifts the later cones by one.
  for (size_t k = 0; k < t; ++k) steps.push_back({PointKind::kTorusFixed, 2 * k, 0});
  return base == BaseKind::kP2 ? BlowupStructure::p2(std::move(steps)) : BlowupStructure::hirzebruch(a, std::move(steps));
}

}  // namespace toricseq

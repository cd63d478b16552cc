#include "toricseq/fans.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace toricseq {

namespace {

Int gcd_abs(Int a, Int b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

// Half-plane index for exact angular comparison: [0, pi) -> 0, [pi, 2pi) -> 1.
int half(const Vec2& v) { return (v[1] > 0 || (v[1] == 0 && v[0] > 0)) ? 0 : 1; }

bool angle_less(const Vec2& u, const Vec2& v) {
  if (half(u) != half(v)) return half(u) < half(v);
  return det2(u, v) > 0;
}

Vec2 add(const Vec2& u, const Vec2& v) { return {checked_add(u[0], v[0]), checked_add(u[1], v[1])}; }

IntVec compute_self_intersections(const std::vector<Vec2>& rays) {
  const size_t n = rays.size();
  IntVec a(n);
  for (size_t i = 0; i < n; ++i) {
    const Vec2& l = rays[i];
    const Vec2 s = add(rays[(i + n - 1) % n], rays[(i + 1) % n]);
    // s is a multiple of l because (l_{i-1}, l_i) and (l_i, l_{i+1}) are bases.
    const size_t c = l[0] != 0 ? 0 : 1;
    const Int k = s[c] / l[c];
    if (s[0] != k * l[0] || s[1] != k * l[1]) throw InternalError("neighbour sum is not a multiple of the ray");
    a[i] = -k;
  }
  return a;
}

}  // namespace

ToricSurface ToricSurface::from_rays(std::vector<Vec2> rays) {
  const size_t n = rays.size();
  if (n < 3) throw InvalidInput("a complete fan needs at least 3 rays, got " + std::to_string(n));
  for (size_t i = 0; i < n; ++i) {
    const Vec2& l = rays[i];
    if (l[0] == 0 && l[1] == 0) throw InvalidInput("ray " + std::to_string(i + 1) + " is zero");
    if (gcd_abs(l[0], l[1]) != 1) throw InvalidInput("ray " + std::to_string(i + 1) + " " + to_string(l) + " is not primitive");
  }
  bool all_negative = true;
  for (size_t i = 0; i < n; ++i)
    if (det2(rays[i], rays[(i + 1) % n]) != -1) all_negative = false;
  if (all_negative) throw InvalidInput("rays are in clockwise order; reverse the order");
  for (size_t i = 0; i < n; ++i) {
    const Int d = det2(rays[i], rays[(i + 1) % n]);
    if (d != 1) {
      throw InvalidInput("det(l" + std::to_string(i + 1) + ", l" + std::to_string((i + 1) % n + 1) + ") = " +
                         std::to_string(d) + ", expected 1 (fan is not smooth and complete)");
    }
  }
  size_t wraps = 0;
  for (size_t i = 0; i < n; ++i)
    if (!angle_less(rays[i], rays[(i + 1) % n])) ++wraps;
  if (wraps != 1) throw InvalidInput("rays wind " + std::to_string(wraps) + " times around the origin");

  ToricSurface s;
  s.self_int_ = compute_self_intersections(rays);
  s.rays_ = std::move(rays);
  return s;
}

Int ToricSurface::toric_intersection(size_t i, size_t j) const {
  const size_t n = size();
  if (i == j) return self_int_[i];
  if ((i + 1) % n == j || (j + 1) % n == i) return 1;
  return 0;
}

const std::vector<DivisorClass>& ToricSurface::ray_classes() const {
  if (!classes_) throw InvalidInput("surface carries no class tracking");
  return *classes_;
}

const SurfaceBasis& ToricSurface::basis() const { return ray_classes().front().basis(); }

ToricSurface ToricSurface::with_tracking(std::vector<DivisorClass> classes) const {
  const size_t n = size();
  if (classes.size() != n) throw InvalidInput("class table length does not match ray count");
  const SurfaceBasis basis = classes.front().basis();
  if (basis.rank() != picard_rank()) throw InvalidInput("class table basis rank does not match Picard rank");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j)
      if (intersect(classes[i], classes[j]) != toric_intersection(i, j)) {
        throw InvalidInput("class table disagrees with the fan at D" + std::to_string(i + 1) + ".D" +
                           std::to_string(j + 1));
      }
  for (int c = 0; c < 2; ++c) {
    DivisorClass rel = DivisorClass::zero(basis);
    for (size_t i = 0; i < n; ++i) rel += rays_[i][static_cast<size_t>(c)] * classes[i];
    if (!rel.is_zero()) throw InvalidInput("class table violates a character relation");
  }
  DivisorClass sum = DivisorClass::zero(basis);
  for (const auto& d : classes) sum += d;
  if (sum != -canonical_class(basis)) throw InvalidInput("ray classes do not sum to -K");
  ToricSurface s = *this;
  s.classes_ = std::move(classes);
  return s;
}

ToricSurface ToricSurface::without_tracking() const {
  ToricSurface s = *this;
  s.classes_.reset();
  return s;
}

ToricSurface ToricSurface::rotated(size_t k) const {
  ToricSurface s = *this;
  const auto shift = static_cast<std::ptrdiff_t>(k % size());
  std::rotate(s.rays_.begin(), s.rays_.begin() + shift, s.rays_.end());
  std::rotate(s.self_int_.begin(), s.self_int_.begin() + shift, s.self_int_.end());
  if (s.classes_) std::rotate(s.classes_->begin(), s.classes_->begin() + shift, s.classes_->end());
  return s;
}

ToricSurface blow_up(const ToricSurface& surface, size_t cone) {
  const size_t n = surface.size();
  if (cone >= n) throw InvalidInput("cone index " + std::to_string(cone) + " out of range");
  std::vector<Vec2> rays = surface.rays();
  const Vec2 fresh = add(rays[cone], rays[(cone + 1) % n]);
  rays.insert(rays.begin() + static_cast<std::ptrdiff_t>(cone + 1), fresh);
  ToricSurface out = ToricSurface::from_rays(std::move(rays));
  if (!surface.tracked()) return out;

  const SurfaceBasis basis = surface.basis().blown_up();
  std::vector<DivisorClass> classes;
  classes.reserve(n + 1);
  for (const auto& d : surface.ray_classes()) classes.push_back(d.pulled_back(basis));
  const DivisorClass r = DivisorClass::r(basis, static_cast<int>(basis.t));
  classes[cone] -= r;
  classes[(cone + 1) % n] -= r;
  classes.insert(classes.begin() + static_cast<std::ptrdiff_t>(cone + 1), r);
  return out.with_tracking(std::move(classes));
}

ToricSurface blow_down(const ToricSurface& surface, size_t ray) {
  const size_t n = surface.size();
  if (ray >= n) throw InvalidInput("ray index " + std::to_string(ray) + " out of range");
  if (n <= 3) throw InvalidInput("cannot blow down a fan with 3 rays");
  if (surface.self_intersection(ray) != -1) throw InvalidInput("ray " + std::to_string(ray + 1) + " is not a (-1)-ray");
  std::vector<Vec2> rays = surface.rays();
  rays.erase(rays.begin() + static_cast<std::ptrdiff_t>(ray));
  ToricSurface out = ToricSurface::from_rays(std::move(rays));
  if (!surface.tracked()) return out;

  const SurfaceBasis& basis = surface.basis();
  if (basis.t == 0) return out;
  const DivisorClass last = DivisorClass::r(basis, static_cast<int>(basis.t));
  if (surface.ray_classes()[ray] != last) return out;
  std::vector<DivisorClass> classes = surface.ray_classes();
  classes[(ray + n - 1) % n] += last;
  classes[(ray + 1) % n] += last;
  classes.erase(classes.begin() + static_cast<std::ptrdiff_t>(ray));
  const SurfaceBasis smaller = basis.blown_up(-1);
  std::vector<DivisorClass> shrunk;
  for (const auto& d : classes) {
    if (d[basis.rank() - 1] != 0) return out;
    IntVec c = d.coeffs();
    c.pop_back();
    shrunk.emplace_back(smaller, std::move(c));
  }
  return out.with_tracking(std::move(shrunk));
}

ToricSurface simultaneous_blow_down(const ToricSurface& surface, std::vector<size_t> rays) {
  const size_t n = surface.size();
  std::sort(rays.begin(), rays.end());
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  if (rays.empty()) return surface;
  std::vector<bool> removed(n, false);
  for (size_t i : rays) {
    if (i >= n) throw InvalidInput("ray index " + std::to_string(i) + " out of range");
    if (surface.self_intersection(i) != -1) throw InvalidInput("ray " + std::to_string(i + 1) + " is not a (-1)-ray");
    removed[i] = true;
  }
  for (size_t i = 0; i < n; ++i)
    if (removed[i] && removed[(i + 1) % n]) {
      throw InvalidInput("rays " + std::to_string(i + 1) + " and " + std::to_string((i + 1) % n + 1) + " are adjacent");
    }
  if (n - rays.size() < 3) throw InvalidInput("blow-down would leave fewer than 3 rays");
  std::vector<Vec2> kept;
  for (size_t i = 0; i < n; ++i)
    if (!removed[i]) kept.push_back(surface.rays()[i]);
  return ToricSurface::from_rays(std::move(kept));
}

namespace {

void extend_chains(const BlowDownChain& prefix, int rounds_left, std::vector<BlowDownChain>& out) {
  const ToricSurface& cur = prefix.stages.back();
  const size_t n = cur.size();
  if (n <= 4) out.push_back(prefix);
  if (rounds_left == 0 || n == 3) return;
  std::vector<size_t> minus_one;
  for (size_t i = 0; i < n; ++i)
    if (cur.self_intersection(i) == -1) minus_one.push_back(i);
  const size_t m = minus_one.size();
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<size_t> subset;
    for (size_t b = 0; b < m; ++b)
      if (mask & (1u << b)) subset.push_back(minus_one[b]);
    bool ok = n - subset.size() >= 3;
    for (size_t x = 0; ok && x < subset.size(); ++x)
      for (size_t y = x + 1; y < subset.size(); ++y) {
        const size_t i = subset[x], j = subset[y];
        if ((i + 1) % n == j || (j + 1) % n == i) ok = false;
      }
    if (!ok) continue;
    BlowDownChain next = prefix;
    std::vector<Vec2> gone;
    for (size_t i : subset) gone.push_back(cur.rays()[i]);
    next.stages.push_back(simultaneous_blow_down(cur, subset));
    next.removed.push_back(std::move(gone));
    extend_chains(next, rounds_left - 1, out);
  }
}

}  // namespace

std::vector<BlowDownChain> blow_down_chains(const ToricSurface& surface, int max_rounds) {
  if (max_rounds < 0) throw InvalidInput("max_rounds must be non-negative");
  std::vector<BlowDownChain> out;
  BlowDownChain start;
  start.stages.push_back(surface.without_tracking());
  extend_chains(start, max_rounds, out);
  return out;
}

bool anticanonical_nef(const ToricSurface& surface) {
  const auto& a = surface.self_intersections();
  return std::all_of(a.begin(), a.end(), [](Int x) { return x >= -2; });
}

IntVec canonical_form(const IntVec& a) {
  const size_t n = a.size();
  IntVec best = a;
  IntVec rev(a.rbegin(), a.rend());
  for (const IntVec* seq : {&a, static_cast<const IntVec*>(&rev)})
    for (size_t r = 0; r < n; ++r) {
      IntVec cand(n);
      for (size_t i = 0; i < n; ++i) cand[i] = (*seq)[(i + r) % n];
      if (cand < best) best = std::move(cand);
    }
  return best;
}

IntVec canonical_form(const ToricSurface& surface) { return canonical_form(surface.self_intersections()); }

ToricSurface surface_from_self_intersections(const IntVec& a) {
  const size_t n = a.size();
  if (n < 3) throw InvalidInput("need at least 3 self-intersection numbers");
  std::vector<Vec2> rays{{1, 0}, {0, 1}};
  for (size_t i = 1; i + 1 < n; ++i) {
    const Vec2& prev = rays[i - 1];
    const Vec2& cur = rays[i];
    rays.push_back({checked_sub(checked_mul(-a[i], cur[0]), prev[0]), checked_sub(checked_mul(-a[i], cur[1]), prev[1])});
  }
  ToricSurface s = ToricSurface::from_rays(rays);
  // A fan is reconstructible up to GL2(Z) from its cycle; check it closes up.
  if (s.self_intersections() != a) {
    throw InvalidInput("self-intersection sequence " + to_string(a) + " does not close up to a smooth complete fan");
  }
  return s;
}

namespace {

std::vector<ToricSurface> minimal_seeds(bool nef_only) {
  std::vector<ToricSurface> seeds{tracked_p2().without_tracking()};
  for (Int a = 0; a <= 2; ++a) seeds.push_back(tracked_hirzebruch(a).without_tracking());
  (void)nef_only;
  return seeds;
}

bool admissible(const ToricSurface& s, bool nef_only) { return !nef_only || anticanonical_nef(s); }

std::vector<ToricSurface> finish_census(const std::map<IntVec, size_t>& seen_by_form) {
  std::vector<std::pair<size_t, IntVec>> keys;
  for (const auto& [form, n] : seen_by_form) keys.emplace_back(n, form);
  std::sort(keys.begin(), keys.end());
  std::vector<ToricSurface> out;
  for (const auto& [n, form] : keys) out.push_back(surface_from_self_intersections(form));
  return out;
}

}  // namespace

std::vector<ToricSurface> enumerate_blowups_serial(size_t max_rays, bool nef_only) {
  std::map<IntVec, size_t> seen;
  std::vector<ToricSurface> stack;
  for (auto& s : minimal_seeds(nef_only))
    if (s.size() <= max_rays && admissible(s, nef_only) && seen.emplace(canonical_form(s), s.size()).second) stack.push_back(s);
  while (!stack.empty()) {
    ToricSurface s = stack.back();
    stack.pop_back();
    if (s.size() >= max_rays) continue;
    for (size_t c = 0; c < s.size(); ++c) {
      ToricSurface child = blow_up(s, c);
      if (!admissible(child, nef_only)) continue;
      if (seen.emplace(canonical_form(child), child.size()).second) stack.push_back(std::move(child));
    }
  }
  return finish_census(seen);
}

std::vector<ToricSurface> enumerate_blowups(size_t max_rays, bool nef_only) {
  // Level-synchronous expansion: each level's children are generated in
  // parallel, then merged and deduplicated in a fixed order.
  std::map<IntVec, size_t> seen;
  std::vector<ToricSurface> frontier;
  for (auto& s : minimal_seeds(nef_only))
    if (s.size() <= max_rays && admissible(s, nef_only) && seen.emplace(canonical_form(s), s.size()).second) frontier.push_back(s);
  while (!frontier.empty()) {
    const auto count = static_cast<std::ptrdiff_t>(frontier.size());
    std::vector<std::vector<std::pair<IntVec, ToricSurface>>> children(frontier.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
      const ToricSurface& s = frontier[static_cast<size_t>(k)];
      if (s.size() >= max_rays) continue;
      for (size_t c = 0; c < s.size(); ++c) {
        ToricSurface child = blow_up(s, c);
        if (admissible(child, nef_only)) children[static_cast<size_t>(k)].emplace_back(canonical_form(child), std::move(child));
      }
    }
    std::vector<ToricSurface> next;
    for (auto& batch : children)
      for (auto& [form, child] : batch)
        if (seen.emplace(form, child.size()).second) next.push_back(std::move(child));
    frontier = std::move(next);
  }
  return finish_census(seen);
}

std::vector<ToricSurface> enumerate_weak_del_pezzo() {
  // Blowing up only lowers self-intersections, and every blow-up of a
  // surface with 9 rays creates a ray below -2, so 10 rays is a safe cap.
  return enumerate_blowups(10, true);
}

ToricSurface tracked_p2() {
  const SurfaceBasis b = SurfaceBasis::p2();
  const DivisorClass h = DivisorClass::h(b);
  return ToricSurface::from_rays({{1, 0}, {0, 1}, {-1, -1}}).with_tracking({h, h, h});
}

ToricSurface tracked_hirzebruch(Int a) {
  const SurfaceBasis b = SurfaceBasis::hirzebruch(a);
  const DivisorClass p = DivisorClass::p(b);
  const DivisorClass q = DivisorClass::q(b);
  return ToricSurface::from_rays({{1, 0}, {0, 1}, {-1, a}, {0, -1}}).with_tracking({p, q - a * p, p, q});
}

ToricSurface with_minimal_tracking(const ToricSurface& minimal) {
  const auto& a = minimal.self_intersections();
  if (minimal.size() == 3) {
    const DivisorClass h = DivisorClass::h(SurfaceBasis::p2());
    return minimal.with_tracking({h, h, h});
  }
  if (minimal.size() != 4) throw InvalidInput("minimal tracking needs a fan with 3 or 4 rays");
  for (size_t r = 0; r < 4; ++r) {
    const Int x0 = a[r], x1 = a[(r + 1) % 4], x2 = a[(r + 2) % 4], x3 = a[(r + 3) % 4];
    if (x0 == 0 && x2 == 0 && x1 >= 0 && x3 == -x1) {
      const SurfaceBasis b = SurfaceBasis::hirzebruch(x1);
      const DivisorClass p = DivisorClass::p(b);
      const DivisorClass q = DivisorClass::q(b);
      std::vector<DivisorClass> classes(4, p);
      classes[(r + 1) % 4] = q;
      classes[(r + 3) % 4] = q - x1 * p;
      return minimal.with_tracking(std::move(classes));
    }
  }
  throw InternalError("4-ray fan is not a Hirzebruch surface");
}

namespace {

void descend(const ToricSurface& cur, std::vector<Vec2>& removed, std::vector<MinimalModelChain>& out) {
  const size_t n = cur.size();
  if (n <= 4) out.push_back({cur, removed});
  if (n == 3) return;
  for (size_t i = 0; i < n; ++i) {
    if (cur.self_intersection(i) != -1) continue;
    removed.push_back(cur.rays()[i]);
    descend(blow_down(cur, i), removed, out);
    removed.pop_back();
  }
}

}  // namespace

std::vector<MinimalModelChain> minimal_model_chains(const ToricSurface& surface) {
  std::vector<MinimalModelChain> out;
  std::vector<Vec2> removed;
  descend(surface.without_tracking(), removed, out);
  return out;
}

ToricSurface track_chain(const MinimalModelChain& chain) {
  ToricSurface cur = with_minimal_tracking(chain.minimal);
  for (auto it = chain.removed.rbegin(); it != chain.removed.rend(); ++it) {
    const size_t n = cur.size();
    size_t cone = n;
    for (size_t i = 0; i < n; ++i)
      if (add(cur.rays()[i], cur.rays()[(i + 1) % n]) == *it) cone = i;
    if (cone == n) throw InternalError("ray " + to_string(*it) + " does not subdivide a cone of the current fan");
    cur = blow_up(cur, cone);
  }
  return cur;
}

std::vector<Vec2> parse_rays(const std::string& text) {
  std::vector<Vec2> rays;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ';');) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    const auto comma = item.find(',');
    if (comma == std::string::npos) throw InvalidInput("ray '" + item + "' is not of the form x,y");
    try {
      size_t used = 0;
      const Int x = std::stoll(item.substr(0, comma), &used);
      const std::string rest = item.substr(comma + 1);
      const Int y = std::stoll(rest, &used);
      if (rest.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("trailing");
      rays.push_back({x, y});
    } catch (const std::logic_error&) {
      throw InvalidInput("ray '" + item + "' is not of the form x,y");
    }
  }
  return rays;
}

nlohmann::ordered_json to_json(const ToricSurface& surface) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json rays = nlohmann::ordered_json::array();
  for (const auto& r : surface.rays()) rays.push_back({r[0], r[1]});
  j["rays"] = rays;
  j["self_intersections"] = surface.self_intersections();
  j["canonical_form"] = canonical_form(surface);
  if (surface.tracked()) {
    j["basis"] = to_json(surface.basis());
    nlohmann::ordered_json classes = nlohmann::ordered_json::array();
    for (const auto& d : surface.ray_classes()) classes.push_back(d.coeffs());
    j["ray_classes"] = classes;
  }
  return j;
}

std::vector<Vec2> rays_from_json(const nlohmann::ordered_json& j) {
  std::vector<Vec2> rays;
  for (const auto& r : j.at("rays")) {
    if (!r.is_array() || r.size() != 2) throw InvalidInput("each ray must be a pair [x, y]");
    rays.push_back({r[0].get<Int>(), r[1].get<Int>()});
  }
  return rays;
}

}  // namespace toricseq

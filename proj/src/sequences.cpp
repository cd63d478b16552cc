#include "toricseq/sequences.hpp"

#include <atomic>
#include <exception>
#include <map>
#include <memory>
#include <set>

#include <omp.h>

namespace toricseq {

namespace {

void require_compatible(const ToricSystem& system, const ToricSurface& surface) {
  if (!surface.tracked()) throw InvalidInput("surface carries no class tracking");
  if (!(surface.basis() == system.basis())) {
    throw InvalidInput("system over " + system.basis().to_string() + " but surface tracked over " +
                       surface.basis().to_string());
  }
  if (system.size() != surface.size()) {
    throw InvalidInput("system has " + std::to_string(system.size()) + " classes, fan has " +
                       std::to_string(surface.size()) + " rays");
  }
}

// Intervals of positions 0..n-2 of the rotated system.
template <typename Visit>
bool for_each_interval(const ToricSystem& system, size_t rotation, Visit&& visit) {
  const size_t n = system.size();
  for (size_t start = 0; start + 1 < n; ++start) {
    DivisorClass sum = DivisorClass::zero(system.basis());
    for (size_t len = 1; start + len < n; ++len) {
      sum += system[(rotation + start + len - 1) % n];
      if (!visit(start, len, sum)) return false;
    }
  }
  return true;
}

void collect(const ToricSystem& system, CohomologyEngine& engine, size_t rotation, bool strong, CheckReport& report) {
  for_each_interval(system, rotation, [&](size_t start, size_t len, const DivisorClass& sum) {
    const DivisorClass neg = -sum;
    const CohomologyTriple c = engine.of(neg);
    if (!c.vanishes()) report.witnesses.push_back({"h*(-S)", rotation, start, len, neg, c});
    if (strong) {
      const CohomologyTriple p = engine.of(sum);
      if (!p.higher_vanish()) report.witnesses.push_back({"h>0(S)", rotation, start, len, sum, p});
    }
    return true;
  });
  report.verdict = report.witnesses.empty();
}

}  // namespace

CheckReport check_exceptional(const ToricSystem& system, const ToricSurface& surface) {
  require_compatible(system, surface);
  CohomologyEngine engine(surface);
  CheckReport report;
  collect(system, engine, 0, false, report);
  return report;
}

CheckReport check_strongly_exceptional(const ToricSystem& system, const ToricSurface& surface) {
  require_compatible(system, surface);
  CohomologyEngine engine(surface);
  CheckReport report;
  collect(system, engine, 0, true, report);
  return report;
}

CheckReport check_cyclic_strong(const ToricSystem& system, const ToricSurface& surface) {
  require_compatible(system, surface);
  CohomologyEngine engine(surface);
  CheckReport report;
  for (size_t k = 0; k < system.size(); ++k) collect(system, engine, k, true, report);
  report.verdict = report.witnesses.empty();
  return report;
}

bool is_strongly_exceptional(const ToricSystem& system, CohomologyEngine& engine) {
  return for_each_interval(system, 0, [&](size_t, size_t, const DivisorClass& sum) {
    return engine.of(-sum).vanishes() && engine.of(sum).higher_vanish();
  });
}

bool is_cyclic_strong(const ToricSystem& system, CohomologyEngine& engine) {
  // The windows of all rotations together cover each cyclic interval of
  // length 1..n-1; visit each once.
  const size_t n = system.size();
  for (size_t start = 0; start < n; ++start) {
    DivisorClass sum = DivisorClass::zero(system.basis());
    for (size_t len = 1; len < n; ++len) {
      sum += system[(start + len - 1) % n];
      if (!engine.of(-sum).vanishes() || !engine.of(sum).higher_vanish()) return false;
    }
  }
  return true;
}

bool witness_reproduces(const Witness& w, const ToricSurface& surface) {
  return cohomology_all(surface, w.divisor) == w.cohomology;
}

Decision decide_sE_existence_toric(const ToricSurface& surface) {
  Decision d;
  if (surface.size() == 3) {
    d.verdict = true;
    d.reason = "the surface is P^2";
    return d;
  }
  for (auto& chain : blow_down_chains(surface, 2)) {
    for (const auto& stage : chain.stages)
      if (stage.size() == 4) {
        d.verdict = true;
        d.reason = "reaches a Hirzebruch surface in " + std::to_string(chain.rounds()) + " round(s)";
        d.chain = std::move(chain);
        return d;
      }
  }
  d.reason = "no chain of at most two simultaneous blow-downs reaches a Hirzebruch surface";
  return d;
}

Decision decide_cyclic_existence_toric(const ToricSurface& surface) {
  Decision d;
  d.verdict = anticanonical_nef(surface);
  if (d.verdict) {
    d.reason = "-K is nef";
  } else {
    const auto& a = surface.self_intersections();
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i] < -2) {
        d.reason = "ray " + std::to_string(i + 1) + " has self-intersection " + std::to_string(a[i]);
        break;
      }
  }
  return d;
}

namespace {

struct SearchContext {
  std::vector<BlowupStructure> structures;
  std::vector<std::unique_ptr<CohomologyEngine>> engines;
};

struct Task {
  size_t chain;
  Int s;
  ToricSystem base;
};

SearchContext prepare(const ToricSurface& surface) {
  SearchContext ctx;
  for (const auto& chain : minimal_model_chains(surface)) {
    ctx.structures.push_back(BlowupStructure::from_chain(chain));
    ctx.engines.push_back(std::make_unique<CohomologyEngine>(ctx.structures.back().surface()));
  }
  return ctx;
}

std::vector<Task> make_tasks(const SearchContext& ctx, const SearchOptions& options) {
  std::vector<Task> tasks;
  for (size_t c = 0; c < ctx.structures.size(); ++c) {
    const auto& st = ctx.structures[c];
    const SRange range = options.s_range ? *options.s_range : SRange::standard(st.a());
    for (auto& [s, base] : base_systems(st, range)) tasks.push_back({c, s, std::move(base)});
  }
  return tasks;
}

struct Counters {
  std::atomic<size_t> nodes{0};
  std::atomic<size_t> leaves{0};
  std::atomic<bool> truncated{false};
};

bool some_square_below(const ToricSystem& system, Int bound) {
  for (const auto& d : system.classes())
    if (intersect(d, d) < bound) return true;
  return false;
}

void dfs(const ToricSystem& cur, size_t steps_left, const Task& task, CohomologyEngine& engine,
         const SearchOptions& options, Counters& counters, std::vector<CyclicHit>& out) {
  const size_t visited = ++counters.nodes;
  if (options.max_nodes != 0 && visited > options.max_nodes) {
    counters.truncated = true;
    return;
  }
  // Augmentation only lowers squares, and a cyclic system has A_i^2 =
  // h0(A_i) - 2 >= -2.
  if (options.prune && some_square_below(cur, -2)) return;
  if (steps_left == 0) {
    ++counters.leaves;
    if (is_cyclic_strong(cur, engine)) out.push_back({task.chain, task.s, canonical_system(cur), {}});
    return;
  }
  for (size_t p = 0; p < cur.size(); ++p) dfs(augment(cur, p), steps_left - 1, task, engine, options, counters, out);
}

SearchResult finish(const SearchContext& ctx, std::vector<std::vector<CyclicHit>>& per_task, Counters& counters) {
  SearchResult result;
  result.chains = ctx.structures.size();
  result.nodes = counters.nodes;
  result.leaves = counters.leaves;
  result.truncated = counters.truncated;
  std::set<std::pair<size_t, ToricSystem>> seen;
  std::set<IntVec> types;
  for (auto& hits : per_task)
    for (auto& hit : hits) {
      if (!seen.emplace(hit.chain, hit.system).second) continue;
      const IntVec from_squares = canonical_form(hit.system.self_intersections());
      hit.associated_type = canonical_form(gale_dual(hit.system));
      if (hit.associated_type != from_squares) {
        throw InternalError("Gale dual of " + hit.system.to_string() + " disagrees with the squares of its classes");
      }
      types.insert(hit.associated_type);
      result.hits.push_back(std::move(hit));
    }
  std::sort(result.hits.begin(), result.hits.end(), [](const CyclicHit& x, const CyclicHit& y) {
    return std::tie(x.chain, x.s, x.system) < std::tie(y.chain, y.s, y.system);
  });
  result.associated_types.assign(types.begin(), types.end());
  return result;
}

}  // namespace

SearchResult search_cyclic_systems(const ToricSurface& surface, const SearchOptions& options) {
  SearchContext ctx = prepare(surface);
  const std::vector<Task> tasks = make_tasks(ctx, options);
  std::vector<std::vector<CyclicHit>> per_task(tasks.size());
  Counters counters;
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (size_t i = 0; i < tasks.size(); ++i) {
    try {
      const Task& task = tasks[i];
      dfs(task.base, ctx.structures[task.chain].t(), task, *ctx.engines[task.chain], options, counters, per_task[i]);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return finish(ctx, per_task, counters);
}

SearchResult search_cyclic_systems_serial(const ToricSurface& surface, const SearchOptions& options) {
  SearchContext ctx = prepare(surface);
  const std::vector<Task> tasks = make_tasks(ctx, options);
  std::vector<std::vector<CyclicHit>> per_task(tasks.size());
  Counters counters;
  for (size_t i = 0; i < tasks.size(); ++i) {
    const Task& task = tasks[i];
    dfs(task.base, ctx.structures[task.chain].t(), task, *ctx.engines[task.chain], options, counters, per_task[i]);
  }
  return finish(ctx, per_task, counters);
}

namespace {

using TorusKey = std::vector<IntVec>;

TorusKey canonical_key(std::vector<IntVec> lifted) {
  const size_t n = lifted.size();
  TorusKey best = lifted;
  std::vector<IntVec> rev(lifted.rbegin(), lifted.rend());
  for (const auto* seq : {&lifted, &rev})
    for (size_t r = 0; r < n; ++r) {
      TorusKey cand(n);
      for (size_t i = 0; i < n; ++i) cand[i] = (*seq)[(i + r) % n];
      if (cand < best) best = std::move(cand);
    }
  return best;
}

TorusKey key_of(const ToricSystem& system, const CohomologyEngine& engine) {
  std::vector<IntVec> lifted;
  for (const auto& d : system.classes()) lifted.push_back(engine.lift(d));
  return canonical_key(std::move(lifted));
}

// Dihedral permutations of the rays preserving the self-intersection cycle.
// On a smooth complete fan each one is induced by a lattice automorphism.
std::vector<std::vector<size_t>> fan_symmetries(const IntVec& a) {
  const size_t n = a.size();
  std::vector<std::vector<size_t>> out;
  for (int flip = 0; flip < 2; ++flip)
    for (size_t r = 0; r < n; ++r) {
      std::vector<size_t> p(n);
      for (size_t i = 0; i < n; ++i) p[i] = flip ? (r + n - i) % n : (i + r) % n;
      bool keeps = true;
      for (size_t i = 0; keeps && i < n; ++i) keeps = a[p[i]] == a[i];
      if (keeps) out.push_back(std::move(p));
    }
  return out;
}

// Smallest key over the fan symmetries, re-normalized through the lift.
TorusKey orbit_key(const TorusKey& key, const std::vector<std::vector<size_t>>& symmetries,
                   const std::vector<DivisorClass>& ray_classes, const CohomologyEngine& engine) {
  TorusKey best = key;
  for (const auto& p : symmetries) {
    std::vector<IntVec> moved;
    for (const auto& d : key) {
      DivisorClass cls = DivisorClass::zero(ray_classes.front().basis());
      for (size_t i = 0; i < d.size(); ++i) cls += d[p[i]] * ray_classes[i];
      moved.push_back(engine.lift(cls));
    }
    TorusKey cand = canonical_key(std::move(moved));
    if (cand < best) best = std::move(cand);
  }
  return best;
}

std::string key_string(const TorusKey& key) {
  std::string out;
  for (const auto& v : key) out += (out.empty() ? "" : " ") + to_string(v);
  return out;
}

void enumerate_box(std::vector<DivisorClass>& prefix, size_t n, const std::vector<DivisorClass>& box,
                   CohomologyEngine& engine, std::vector<ToricSystem>& out) {
  const size_t k = prefix.size();
  if (k + 1 == n) {
    DivisorClass last = -canonical_class(prefix.front().basis());
    for (const auto& d : prefix) last -= d;
    std::vector<DivisorClass> all = prefix;
    all.push_back(last);
    ToricSystem sys(std::move(all));
    if (validate(sys) && is_cyclic_strong(sys, engine)) out.push_back(std::move(sys));
    return;
  }
  for (const auto& cand : box) {
    if (k > 0 && intersect(cand, prefix[k - 1]) != 1) continue;
    bool ok = true;
    for (size_t j = 0; ok && j + 1 < k; ++j) ok = intersect(cand, prefix[j]) == 0;
    if (!ok) continue;
    prefix.push_back(cand);
    enumerate_box(prefix, n, box, engine, out);
    prefix.pop_back();
  }
}

}  // namespace

ExhaustiveComparison exhaustive_cyclic_crosscheck(const ToricSurface& surface, Int bound) {
  if (surface.picard_rank() > 3) throw InvalidInput("exhaustive cross-check is limited to rank <= 3");
  if (bound < 0) throw InvalidInput("bound must be non-negative");
  const auto chains = minimal_model_chains(surface);
  const BlowupStructure reference = BlowupStructure::from_chain(chains.front());
  CohomologyEngine engine(reference.surface());
  const SurfaceBasis basis = reference.final_basis();
  const int r = basis.rank();

  std::vector<DivisorClass> box;
  IntVec c(static_cast<size_t>(r), -bound);
  for (;;) {
    DivisorClass d(basis, c);
    if (intersect(d, d) >= -2) box.push_back(d);
    size_t i = 0;
    while (i < c.size() && c[i] == bound) c[i++] = -bound;
    if (i == c.size()) break;
    ++c[i];
  }
  std::vector<ToricSystem> direct;
  std::vector<DivisorClass> prefix;
  enumerate_box(prefix, surface.size(), box, engine, direct);

  ExhaustiveComparison cmp;
  const auto symmetries = fan_symmetries(surface.self_intersections());
  const auto& ref_classes = reference.surface().ray_classes();
  std::set<TorusKey> direct_keys;
  std::set<IntVec> types;
  for (const auto& sys : direct) {
    direct_keys.insert(orbit_key(key_of(sys, engine), symmetries, ref_classes, engine));
    types.insert(canonical_form(sys.self_intersections()));
  }
  cmp.exhaustive_count = direct_keys.size();
  cmp.exhaustive_types.assign(types.begin(), types.end());

  const SearchResult search = search_cyclic_systems_serial(surface);
  std::set<TorusKey> search_keys;
  std::vector<std::unique_ptr<CohomologyEngine>> engines;
  std::vector<BlowupStructure> structures;
  for (const auto& chain : chains) {
    structures.push_back(BlowupStructure::from_chain(chain));
    engines.push_back(std::make_unique<CohomologyEngine>(structures.back().surface()));
  }
  for (const auto& hit : search.hits) {
    const TorusKey key = key_of(hit.system, *engines[hit.chain]);
    search_keys.insert(orbit_key(key, symmetries, ref_classes, engine));
    // Coefficients in the reference basis decide whether the box covers it.
    bool inside = true;
    for (const auto& d : key) {
      DivisorClass cls = DivisorClass::zero(basis);
      for (size_t i = 0; i < d.size(); ++i) cls += d[i] * ref_classes[i];
      for (Int x : cls.coeffs()) inside = inside && x >= -bound && x <= bound;
    }
    if (inside && !direct_keys.count(orbit_key(key, symmetries, ref_classes, engine))) cmp.missing_in_box.push_back(key_string(key));
  }
  for (const auto& key : direct_keys)
    if (!search_keys.count(key)) cmp.missing_in_search.push_back(key_string(key));
  return cmp;
}

nlohmann::ordered_json to_json(const CheckReport& report) {
  nlohmann::ordered_json j;
  j["verdict"] = report.verdict;
  nlohmann::ordered_json ws = nlohmann::ordered_json::array();
  for (const auto& w : report.witnesses) {
    nlohmann::ordered_json x;
    x["condition"] = w.condition;
    x["rotation"] = w.rotation;
    x["interval"] = {w.start + 1, w.start + w.length};
    x["divisor"] = w.divisor.to_string();
    x["coeffs"] = w.divisor.coeffs();
    x["cohomology"] = {w.cohomology.h0, w.cohomology.h1, w.cohomology.h2};
    ws.push_back(x);
  }
  j["witnesses"] = ws;
  return j;
}

nlohmann::ordered_json to_json(const Decision& decision) {
  nlohmann::ordered_json j;
  j["verdict"] = decision.verdict;
  j["reason"] = decision.reason;
  if (decision.chain) {
    nlohmann::ordered_json stages = nlohmann::ordered_json::array();
    for (const auto& s : decision.chain->stages) stages.push_back(s.self_intersections());
    j["stages"] = stages;
    nlohmann::ordered_json removed = nlohmann::ordered_json::array();
    for (const auto& round : decision.chain->removed) {
      nlohmann::ordered_json rays = nlohmann::ordered_json::array();
      for (const auto& v : round) rays.push_back({v[0], v[1]});
      removed.push_back(rays);
    }
    j["removed"] = removed;
  }
  return j;
}

nlohmann::ordered_json to_json(const SearchResult& result, bool with_hits) {
  nlohmann::ordered_json j;
  j["associated_types"] = result.associated_types;
  j["chains"] = result.chains;
  j["nodes"] = result.nodes;
  j["leaves"] = result.leaves;
  j["truncated"] = result.truncated;
  j["hit_count"] = result.hits.size();
  if (with_hits) {
    nlohmann::ordered_json hits = nlohmann::ordered_json::array();
    for (const auto& h : result.hits) {
      nlohmann::ordered_json x;
      x["chain"] = h.chain;
      x["s"] = h.s;
      x["system"] = to_json(h.system);
      x["associated_type"] = h.associated_type;
      hits.push_back(x);
    }
    j["hits"] = hits;
  }
  return j;
}

}  // namespace toricseq

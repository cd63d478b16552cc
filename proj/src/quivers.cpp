#include "toricseq/quivers.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "toricseq/cohomology.hpp"
#include "toricseq/sequences.hpp"

namespace toricseq {

IntMatrix Quiver::multiplicities() const {
  IntMatrix m(vertex_count, IntVec(vertex_count, 0));
  for (const auto& a : arrows) ++m[a.src][a.dst];
  return m;
}

Int Quiver::arrow_count(size_t src, size_t dst) const {
  return std::count_if(arrows.begin(), arrows.end(), [&](const Arrow& a) { return a.src == src && a.dst == dst; });
}

std::vector<size_t> Quiver::normalize() {
  std::vector<size_t> order(arrows.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    const Arrow &a = arrows[x], &b = arrows[y];
    return std::tie(a.src, a.dst, a.label) < std::tie(b.src, b.dst, b.label);
  });
  std::vector<size_t> where(arrows.size());
  std::vector<Arrow> sorted;
  sorted.reserve(arrows.size());
  for (size_t k = 0; k < order.size(); ++k) {
    where[order[k]] = k;
    sorted.push_back(std::move(arrows[order[k]]));
  }
  arrows = std::move(sorted);
  return where;
}

Quiver quiver_from_edges(size_t vertex_count, const std::vector<std::pair<size_t, size_t>>& edges, bool cyclic) {
  Quiver q;
  q.vertex_count = vertex_count;
  q.cyclic = cyclic;
  for (const auto& [s, d] : edges) {
    if (s >= vertex_count || d >= vertex_count) throw InvalidInput("edge endpoint out of range");
    q.arrows.push_back({s, d, "e" + std::to_string(q.arrows.size()), std::nullopt, false});
  }
  q.normalize();
  return q;
}

namespace {

void require_tracked(const ToricSurface& surface, const SurfaceBasis& basis) {
  if (!surface.tracked() || !(surface.basis() == basis)) {
    throw InvalidInput("toric mode needs a surface tracked over " + basis.to_string());
  }
}

std::string character_label(const Vec2& m) { return "x^" + std::to_string(m[0]) + "y^" + std::to_string(m[1]); }

// Helix positions 0..period-1 (acyclic: period = n and no wrap). E(k) is the
// class at position k; characters are lattice points of E(j) - E(i).
class HelixBuilder {
 public:
  HelixBuilder(std::vector<DivisorClass> helix, size_t n, bool cyclic, const ToricSurface& surface)
      : helix_(std::move(helix)), n_(n), cyclic_(cyclic), engine_(surface) {}

  BoundQuiver build() {
    // Pairs ordered by length so that shorter relations exist before they are
    // needed for implication.
    const size_t max_len = cyclic_ ? n_ : n_ - 1;
    for (size_t len = 1; len <= max_len; ++len)
      for (size_t i = 0; i < n_; ++i) {
        const size_t j = i + len;
        if (!cyclic_ && j >= n_) continue;
        add_arrows(i, j);
      }
    for (size_t len = 2; len <= max_len; ++len)
      for (size_t i = 0; i < n_; ++i) {
        const size_t j = i + len;
        if (!cyclic_ && j >= n_) continue;
        add_relations(i, j);
      }
    BoundQuiver out;
    out.quiver.vertex_count = n_;
    out.quiver.cyclic = cyclic_;
    for (const auto& h : arrows_) out.quiver.arrows.push_back(h.arrow);
    const std::vector<size_t> where = out.quiver.normalize();
    for (auto& r : relations_) {
      for (auto& x : r.lhs) x = where[x];
      for (auto& x : r.rhs) x = where[x];
      out.relations.relations.push_back(r);
    }
    return out;
  }

 private:
  struct HelixArrow {
    size_t from;  // helix position in [0, n)
    size_t to;    // helix position in (from, from + n]
    Arrow arrow;
  };
  using Path = std::vector<size_t>;

  const std::set<Vec2>& points(size_t i, size_t j) {
    const size_t shift = i - i % n_;
    const std::pair<size_t, size_t> key{i - shift, j - shift};
    auto it = points_.find(key);
    if (it != points_.end()) return it->second;
    const DivisorClass d = helix_[key.second] - helix_[key.first];
    const SectionBasis sb = engine_.sections(d);
    return points_.emplace(key, std::set<Vec2>(sb.points.begin(), sb.points.end())).first->second;
  }

  void add_arrows(size_t i, size_t j) {
    std::set<Vec2> gens = points(i, j);
    for (size_t k = i + 1; k < j; ++k) {
      const auto& left = points(i, k);
      const auto& right = points(k, j);
      for (const auto& u : left)
        for (const auto& v : right) gens.erase(Vec2{u[0] + v[0], u[1] + v[1]});
    }
    for (const auto& m : gens) {
      Arrow a{i % n_, j % n_, character_label(m), m, cyclic_ && j == i + n_};
      out_arrows_[i].push_back(arrows_.size());
      arrows_.push_back({i, j, std::move(a)});
    }
  }

  // Paths starting at helix position i (normalized) and ending at j.
  void paths_between(size_t i, size_t j, Path& prefix, std::vector<Path>& out) {
    if (i == j) {
      out.push_back(prefix);
      return;
    }
    const size_t shift = i - i % n_;
    auto it = out_arrows_.find(i - shift);
    if (it == out_arrows_.end()) return;
    for (size_t id : it->second) {
      const size_t to = arrows_[id].to + shift;
      if (to > j) continue;
      prefix.push_back(id);
      paths_between(to, j, prefix, out);
      prefix.pop_back();
    }
  }

  Vec2 character(const Path& p) const {
    Vec2 c{0, 0};
    for (size_t id : p) {
      c[0] += (*arrows_[id].arrow.character)[0];
      c[1] += (*arrows_[id].arrow.character)[1];
    }
    return c;
  }

  void add_relations(size_t i, size_t j) {
    std::vector<Path> all;
    Path prefix;
    paths_between(i, j, prefix, all);
    std::map<Vec2, std::vector<Path>> groups;
    for (auto& p : all) groups[character(p)].push_back(std::move(p));
    for (auto& [chr, group] : groups) {
      if (group.size() < 2) continue;
      std::sort(group.begin(), group.end());
      std::map<Path, size_t> index;
      for (size_t k = 0; k < group.size(); ++k) index.emplace(group[k], k);
      std::vector<size_t> parent(group.size());
      std::iota(parent.begin(), parent.end(), 0);
      std::function<size_t(size_t)> find = [&](size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
      const auto unite = [&](size_t x, size_t y) {
        x = find(x);
        y = find(y);
        if (x != y) parent[std::max(x, y)] = std::min(x, y);
      };
      // Substitute every emitted relation into every path of the group.
      for (size_t k = 0; k < group.size(); ++k)
        for (const auto& rel : relations_)
          for (int side = 0; side < 2; ++side) {
            const Path& from = side == 0 ? rel.lhs : rel.rhs;
            const Path& to = side == 0 ? rel.rhs : rel.lhs;
            const Path& p = group[k];
            if (from.size() > p.size()) continue;
            for (size_t pos = 0; pos + from.size() <= p.size(); ++pos) {
              if (!std::equal(from.begin(), from.end(), p.begin() + static_cast<std::ptrdiff_t>(pos))) continue;
              Path q(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(pos));
              q.insert(q.end(), to.begin(), to.end());
              q.insert(q.end(), p.begin() + static_cast<std::ptrdiff_t>(pos + from.size()), p.end());
              if (auto f = index.find(q); f != index.end()) unite(k, f->second);
            }
          }
      for (size_t k = 1; k < group.size(); ++k) {
        if (find(k) != k) continue;
        relations_.push_back({group[0], group[k]});
        unite(0, k);
      }
    }
  }

  std::vector<DivisorClass> helix_;
  size_t n_;
  bool cyclic_;
  CohomologyEngine engine_;
  std::map<std::pair<size_t, size_t>, std::set<Vec2>> points_;
  std::vector<HelixArrow> arrows_;
  std::map<size_t, std::vector<size_t>> out_arrows_;
  std::vector<Relation> relations_;
};

}  // namespace

IntMatrix hom_matrix(const ExceptionalSeq& seq, const ToricSurface& surface, bool verify) {
  if (seq.divisors.empty()) throw InvalidInput("empty sequence");
  require_tracked(surface, seq.divisors.front().basis());
  if (verify) {
    const CheckReport r = check_strongly_exceptional(from_sequence(seq), surface);
    if (!r.verdict) throw InvalidInput("sequence is not strongly exceptional on this surface");
  }
  CohomologyEngine engine(surface);
  const size_t n = seq.divisors.size();
  IntMatrix m(n, IntVec(n, 0));
  for (size_t i = 0; i < n; ++i) {
    m[i][i] = 1;
    for (size_t j = i + 1; j < n; ++j) m[i][j] = engine.h0(seq.divisors[j] - seq.divisors[i]);
  }
  return m;
}

BoundQuiver build_quiver(const ExceptionalSeq& seq, const ToricSurface& surface) {
  if (seq.divisors.empty()) throw InvalidInput("empty sequence");
  require_tracked(surface, seq.divisors.front().basis());
  HelixBuilder b(seq.divisors, seq.divisors.size(), false, surface);
  return b.build();
}

BoundQuiver build_cyclic_quiver(const ToricSystem& system, const ToricSurface& surface) {
  require_tracked(surface, system.basis());
  const CheckReport r = check_cyclic_strong(system, surface);
  if (!r.verdict) throw InvalidInput("toric system is not cyclic strongly exceptional on this surface");
  const ExceptionalSeq seq = to_sequence(system);
  const size_t n = seq.divisors.size();
  const DivisorClass minus_k = -canonical_class(system.basis());
  std::vector<DivisorClass> helix = seq.divisors;
  for (size_t k = 0; k < n; ++k) helix.push_back(seq.divisors[k] + minus_k);
  HelixBuilder b(std::move(helix), n, true, surface);
  return b.build();
}

Quiver mckay_quiver(const McKayInput& input) {
  const size_t r = input.orders.size();
  if (r == 0) throw InvalidInput("group needs at least one cyclic factor");
  for (Int d : input.orders)
    if (d < 1) throw InvalidInput("cyclic factor orders must be positive");
  if (input.weights.size() != 3) throw InvalidInput("need exactly three weights");
  for (const auto& w : input.weights)
    if (w.size() != r) throw InvalidInput("weight has " + std::to_string(w.size()) + " components, group has " + std::to_string(r));
  for (size_t c = 0; c < r; ++c) {
    const Int sum = input.weights[0][c] + input.weights[1][c] + input.weights[2][c];
    if (((sum % input.orders[c]) + input.orders[c]) % input.orders[c] != 0) {
      throw InvalidInput("weights do not sum to zero in G (not in SL3)");
    }
  }
  size_t size = 1;
  for (Int d : input.orders) size *= static_cast<size_t>(d);
  const auto decode = [&](size_t g) {
    IntVec e(r);
    for (size_t c = r; c-- > 0;) {
      e[c] = static_cast<Int>(g % static_cast<size_t>(input.orders[c]));
      g /= static_cast<size_t>(input.orders[c]);
    }
    return e;
  };
  const auto encode = [&](const IntVec& e) {
    size_t g = 0;
    for (size_t c = 0; c < r; ++c) {
      const Int d = input.orders[c];
      g = g * static_cast<size_t>(d) + static_cast<size_t>(((e[c] % d) + d) % d);
    }
    return g;
  };
  Quiver q;
  q.vertex_count = size;
  q.cyclic = true;
  for (size_t g = 0; g < size; ++g) {
    const IntVec e = decode(g);
    for (size_t w = 0; w < 3; ++w) {
      IntVec h = e;
      for (size_t c = 0; c < r; ++c) h[c] += input.weights[w][c];
      q.arrows.push_back({g, encode(h), "w" + std::to_string(w + 1), std::nullopt, false});
    }
  }
  q.normalize();
  return q;
}

bool quiver_isomorphic(const Quiver& q1, const Quiver& q2) {
  constexpr size_t kCap = 12;
  if (q1.vertex_count > kCap || q2.vertex_count > kCap) {
    throw InvalidInput("quiver isomorphism is limited to " + std::to_string(kCap) + " vertices");
  }
  if (q1.vertex_count != q2.vertex_count || q1.arrows.size() != q2.arrows.size()) return false;
  const size_t n = q1.vertex_count;
  const IntMatrix m1 = q1.multiplicities(), m2 = q2.multiplicities();
  using Degree = std::array<Int, 3>;
  const auto degrees = [n](const IntMatrix& m) {
    std::vector<Degree> d(n, Degree{0, 0, 0});
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        if (i == j) {
          d[i][2] += m[i][j];
        } else {
          d[i][0] += m[i][j];
          d[j][1] += m[i][j];
        }
      }
    return d;
  };
  const auto d1 = degrees(m1), d2 = degrees(m2);
  {
    auto s1 = d1, s2 = d2;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    if (s1 != s2) return false;
  }
  std::vector<size_t> image(n, n);
  std::vector<bool> used(n, false);
  std::function<bool(size_t)> extend = [&](size_t u) {
    if (u == n) return true;
    for (size_t v = 0; v < n; ++v) {
      if (used[v] || d1[u] != d2[v] || m1[u][u] != m2[v][v]) continue;
      bool ok = true;
      for (size_t w = 0; ok && w < u; ++w) ok = m1[u][w] == m2[v][image[w]] && m1[w][u] == m2[image[w]][v];
      if (!ok) continue;
      image[u] = v;
      used[v] = true;
      if (extend(u + 1)) return true;
      used[v] = false;
    }
    return false;
  };
  return extend(0);
}

Int path_algebra_dim(const Quiver& quiver, const RelationSet* relations) {
  const size_t n = quiver.vertex_count;
  // Kahn's algorithm; a cycle makes the path algebra infinite.
  std::vector<size_t> indeg(n, 0), order;
  for (const auto& a : quiver.arrows) ++indeg[a.dst];
  for (size_t v = 0; v < n; ++v)
    if (indeg[v] == 0) order.push_back(v);
  for (size_t k = 0; k < order.size(); ++k)
    for (const auto& a : quiver.arrows)
      if (a.src == order[k] && --indeg[a.dst] == 0) order.push_back(a.dst);
  if (order.size() != n) throw InvalidInput("quiver has oriented cycles; its path algebra is infinite");

  if (!relations) {
    Int total = 0;
    for (size_t s = 0; s < n; ++s) {
      std::vector<Int> count(n, 0);
      count[s] = 1;
      for (size_t v : order)
        for (const auto& a : quiver.arrows)
          if (a.src == v) count[a.dst] = checked_add(count[a.dst], count[v]);
      for (Int c : count) total = checked_add(total, c);
    }
    return total;
  }
  for (const auto& a : quiver.arrows)
    if (!a.character) throw InvalidInput("relations mode needs character-labelled arrows");
  Int total = static_cast<Int>(n);
  for (size_t s = 0; s < n; ++s) {
    std::vector<std::set<Vec2>> chars(n);
    chars[s].insert({0, 0});
    for (size_t v : order)
      for (const auto& a : quiver.arrows)
        if (a.src == v)
          for (const auto& c : chars[v]) chars[a.dst].insert({c[0] + (*a.character)[0], c[1] + (*a.character)[1]});
    for (size_t t = 0; t < n; ++t)
      if (t != s) total += static_cast<Int>(chars[t].size());
  }
  return total;
}

std::string export_dot(const BoundQuiver& q) {
  std::ostringstream out;
  out << "digraph quiver {\n";
  for (const auto& r : q.relations.relations) {
    out << "  // relation:";
    for (size_t id : r.lhs) out << " " << id;
    out << " =";
    for (size_t id : r.rhs) out << " " << id;
    out << "\n";
  }
  for (size_t v = 0; v < q.quiver.vertex_count; ++v) out << "  " << v << ";\n";
  for (size_t k = 0; k < q.quiver.arrows.size(); ++k) {
    const Arrow& a = q.quiver.arrows[k];
    out << "  " << a.src << " -> " << a.dst << " [label=\"" << a.label << "\", id=" << k << "];\n";
  }
  out << "}\n";
  return out.str();
}

nlohmann::ordered_json to_json(const BoundQuiver& q) {
  nlohmann::ordered_json j;
  j["vertices"] = q.quiver.vertex_count;
  j["cyclic"] = q.quiver.cyclic;
  nlohmann::ordered_json arrows = nlohmann::ordered_json::array();
  for (const auto& a : q.quiver.arrows) {
    nlohmann::ordered_json x;
    x["src"] = a.src;
    x["dst"] = a.dst;
    x["label"] = a.label;
    if (a.character) x["character"] = {(*a.character)[0], (*a.character)[1]};
    if (a.boundary) x["boundary"] = true;
    arrows.push_back(x);
  }
  j["arrows"] = arrows;
  nlohmann::ordered_json rels = nlohmann::ordered_json::array();
  for (const auto& r : q.relations.relations) {
    nlohmann::ordered_json x;
    x["lhs"] = r.lhs;
    x["rhs"] = r.rhs;
    rels.push_back(x);
  }
  j["relations"] = rels;
  return j;
}

std::string export_json(const BoundQuiver& q) { return to_json(q).dump(2) + "\n"; }

BoundQuiver quiver_from_json(const nlohmann::ordered_json& j) {
  BoundQuiver q;
  try {
    q.quiver.vertex_count = j.at("vertices").get<size_t>();
    q.quiver.cyclic = j.value("cyclic", false);
    for (const auto& x : j.at("arrows")) {
      Arrow a;
      a.src = x.at("src").get<size_t>();
      a.dst = x.at("dst").get<size_t>();
      a.label = x.at("label").get<std::string>();
      if (x.contains("character")) a.character = Vec2{x["character"][0].get<Int>(), x["character"][1].get<Int>()};
      a.boundary = x.value("boundary", false);
      if (a.src >= q.quiver.vertex_count || a.dst >= q.quiver.vertex_count) throw InvalidInput("arrow endpoint out of range");
      q.quiver.arrows.push_back(std::move(a));
    }
    for (const auto& x : j.value("relations", nlohmann::ordered_json::array())) {
      q.relations.relations.push_back({x.at("lhs").get<std::vector<size_t>>(), x.at("rhs").get<std::vector<size_t>>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed quiver JSON: ") + e.what());
  }
  for (const auto& r : q.relations.relations)
    for (const auto* side : {&r.lhs, &r.rhs})
      for (size_t id : *side)
        if (id >= q.quiver.arrows.size()) throw InvalidInput("relation references arrow " + std::to_string(id));
  return q;
}

BoundQuiver parse_quiver_json(const std::string& text) {
  try {
    return quiver_from_json(nlohmann::ordered_json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace toricseq

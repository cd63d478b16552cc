#include "toricseq/deformations.hpp"

#include <random>
#include <sstream>

#include "toricseq/augmentation.hpp"

namespace toricseq {

namespace {

// Index of x_i x_j (i <= j) among x^2, xy, xz, y^2, yz, z^2.
size_t quad_index(size_t i, size_t j) {
  if (i > j) std::swap(i, j);
  static constexpr size_t kTable[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
  return kTable[i][j];
}

// Coefficients of the product of two linear forms.
QVector multiply_linear(const QVector& f, const QVector& g) {
  QVector out(6, Rational(0));
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) out[quad_index(i, j)] += f[i] * g[j];
  return out;
}

QVector unit(size_t i, size_t n) {
  QVector v(n, Rational(0));
  v[i] = 1;
  return v;
}

// Columns are images of the domain basis vectors.
QMatrix from_columns(const std::vector<QVector>& cols, size_t rows) {
  QMatrix m = zero_matrix(rows, cols.size());
  for (size_t c = 0; c < cols.size(); ++c)
    for (size_t r = 0; r < rows; ++r) m[r][c] = cols[c][r];
  return m;
}

// H (x) V* -> S^2 V* on the basis h_a (x) e_b, a-major.
QMatrix tensor_with_linear(const std::vector<QVector>& forms) {
  std::vector<QVector> cols;
  for (const auto& h : forms)
    for (size_t b = 0; b < 3; ++b) cols.push_back(multiply_linear(h, unit(b, 3)));
  return from_columns(cols, 6);
}

std::vector<QVector> standard_linear_basis() { return {unit(0, 3), unit(1, 3), unit(2, 3)}; }

std::vector<QVector> all_hyperplanes(const PointConfig& config) {
  std::vector<QVector> forms;
  for (const auto& p : config.points)
    for (const auto& h : hyperplane_space(p).basis) forms.push_back(h);
  return forms;
}

}  // namespace

bool ProjPoint::same_point(const ProjPoint& other) const {
  // Proportional iff all 2x2 minors vanish.
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = i + 1; j < 3; ++j)
      if (coords[i] * other.coords[j] != coords[j] * other.coords[i]) return false;
  return true;
}

void PointConfig::validate() const {
  for (size_t i = 0; i < points.size(); ++i) {
    const auto& c = points[i].coords;
    if (c[0] == 0 && c[1] == 0 && c[2] == 0) throw InvalidInput("point " + std::to_string(i + 1) + " is the zero vector");
    for (size_t j = 0; j < i; ++j)
      if (points[i].same_point(points[j])) {
        throw InvalidInput("points " + std::to_string(j + 1) + " and " + std::to_string(i + 1) + " coincide");
      }
  }
}

PointConfig PointConfig::parse(const std::string& text) {
  PointConfig config;
  std::stringstream in(text);
  std::string point;
  while (std::getline(in, point, ';')) {
    if (point.empty()) continue;
    std::stringstream ps(point);
    std::string tok;
    std::vector<Rational> c;
    while (std::getline(ps, tok, ',')) c.push_back(parse_rational(tok));
    if (c.size() != 3) throw InvalidInput("point '" + point + "' needs three coordinates");
    config.points.push_back({{c[0], c[1], c[2]}});
  }
  if (config.points.empty()) throw InvalidInput("no points given");
  config.validate();
  return config;
}

PointConfig PointConfig::torus_fixed(size_t t) {
  if (t > 3) throw InvalidInput("P^2 has only three torus-fixed points");
  PointConfig config;
  for (size_t i = 0; i < t; ++i) {
    ProjPoint p{{Rational(0), Rational(0), Rational(0)}};
    p.coords[i] = 1;
    config.points.push_back(p);
  }
  return config;
}

PointConfig PointConfig::random(size_t t, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(-9, 9);
  PointConfig config;
  while (config.points.size() < t) {
    ProjPoint p{{Rational(coord(rng)), Rational(coord(rng)), Rational(coord(rng))}};
    if (p.coords[0] == 0 && p.coords[1] == 0 && p.coords[2] == 0) continue;
    bool fresh = true;
    for (const auto& q : config.points) fresh = fresh && !p.same_point(q);
    if (fresh) config.points.push_back(p);
  }
  return config;
}

PointConfig PointConfig::transformed(const QMatrix& g) const {
  if (g.size() != 3 || rank(g) != 3) throw InvalidInput("change of coordinates must be an invertible 3x3 matrix");
  PointConfig out;
  for (const auto& p : points) {
    const QVector v = toricseq::apply(g, QVector(p.coords.begin(), p.coords.end()));
    out.points.push_back({{v[0], v[1], v[2]}});
  }
  out.validate();
  return out;
}

FormSpace hyperplane_space(const ProjPoint& point) {
  const auto& c = point.coords;
  if (c[0] == 0 && c[1] == 0 && c[2] == 0) throw InvalidInput("zero vector is not a projective point");
  const QMatrix eval(1, QVector{c[0], c[1], c[2]});
  FormSpace fs;
  fs.degree = 1;
  fs.basis = kernel(eval, 3);
  return fs;
}

RelationIdeal relation_ideal(const PointConfig& config) {
  config.validate();
  if (config.t() == 0) throw InvalidInput("need at least one point");
  RelationIdeal ideal;
  for (size_t i = 0; i < config.t(); ++i) {
    const FormSpace h = hyperplane_space(config.points[i]);
    KernelBasis k;
    k.map = "H_" + std::to_string(i + 1) + " (x) V* -> S^2 V*";
    k.domain_dim = h.dim() * 3;
    k.basis = kernel(tensor_with_linear(h.basis), k.domain_dim);
    ideal.per_point.push_back(std::move(k));
  }
  const std::vector<QVector> forms = all_hyperplanes(config);
  ideal.hyperplane_sum.map = "sum H_i -> V*";
  ideal.hyperplane_sum.domain_dim = forms.size();
  ideal.hyperplane_sum.basis = kernel(from_columns(forms, 3), forms.size());
  ideal.antisymmetric.map = "V* (x) V* -> S^2 V*";
  ideal.antisymmetric.domain_dim = 9;
  ideal.antisymmetric.basis = kernel(tensor_with_linear(standard_linear_basis()), 9);
  return ideal;
}

AlgebraDimension algebra_dimension_report(const PointConfig& config) {
  config.validate();
  const size_t t = config.t();
  if (t == 0) throw InvalidInput("need at least one point");
  AlgebraDimension d;
  const auto add = [&](std::string space, std::string ident, Int dim) {
    d.entries.push_back({std::move(space), std::move(ident), dim});
    d.total += dim;
  };
  const std::string src = "e_" + std::to_string(t + 1);
  const std::string mid = "e_" + std::to_string(t + 2);
  const std::string top = "e_" + std::to_string(t + 3);
  add("identities", "k per vertex", static_cast<Int>(t + 3));
  const Int v_dim = static_cast<Int>(rank(from_columns(standard_linear_basis(), 3)));
  const Int s2_dim = static_cast<Int>(rank(tensor_with_linear(standard_linear_basis())));
  for (size_t i = 0; i < t; ++i) {
    const std::string e = "e_" + std::to_string(i + 1);
    const FormSpace h = hyperplane_space(config.points[i]);
    add(e + " A " + src, "Gamma(R_" + std::to_string(i + 1) + ")", 1);
    add(mid + " A " + e, "H_" + std::to_string(i + 1), static_cast<Int>(h.dim()));
    add(top + " A " + e, "im(H_" + std::to_string(i + 1) + " (x) V* -> S^2 V*)",
        static_cast<Int>(rank(tensor_with_linear(h.basis))));
  }
  add(top + " A " + mid, "V*", v_dim);
  add(mid + " A " + src, "V*", v_dim);
  add(top + " A " + src, "S^2 V*", s2_dim);
  return d;
}

Int algebra_dimension(const PointConfig& config) { return algebra_dimension_report(config).total; }

Quiver blowup_figure_quiver(size_t t) {
  std::vector<std::pair<size_t, size_t>> edges;
  const size_t h = t + 1, top = t + 2;
  for (size_t k = 1; k <= t; ++k) {
    edges.emplace_back(0, k);
    edges.emplace_back(k, h);
    edges.emplace_back(k, h);
  }
  for (int r = 0; r < 3; ++r) edges.emplace_back(h, top);
  return quiver_from_edges(t + 3, edges);
}

IdealAccounting ideal_accounting(const PointConfig& config) {
  config.validate();
  const size_t t = config.t();
  IdealAccounting acc;
  acc.dim_a = path_algebra_dim(blowup_figure_quiver(t));
  acc.dim_ax = algebra_dimension(config);
  const RelationIdeal ideal = relation_ideal(config);
  acc.degree2_kernel = static_cast<Int>(ideal.hyperplane_sum.dim());
  acc.cokernels = 3 - static_cast<Int>(ideal.hyperplane_sum.domain_dim - ideal.hyperplane_sum.dim());
  for (const auto& k : ideal.per_point) acc.per_point_kernels += static_cast<Int>(k.dim());

  // Degree three: (sum H_i) (x) V* with basis (i, a, b).
  const std::vector<QVector> forms = all_hyperplanes(config);
  const size_t dom = forms.size() * 3;
  const QMatrix composite = tensor_with_linear(forms);
  const size_t composite_rank = rank(composite);
  acc.degree3_ideal = static_cast<Int>(dom - composite_rank);
  acc.cokernels += 6 - static_cast<Int>(composite_rank);

  std::vector<QVector> gens;
  for (const auto& kv : ideal.hyperplane_sum.basis)
    for (size_t b = 0; b < 3; ++b) {
      QVector v(dom, Rational(0));
      for (size_t f = 0; f < forms.size(); ++f) v[f * 3 + b] = kv[f];
      gens.push_back(std::move(v));
    }
  for (size_t i = 0; i < t; ++i)
    for (const auto& kv : ideal.per_point[i].basis) {
      QVector v(dom, Rational(0));
      for (size_t j = 0; j < kv.size(); ++j) v[i * 6 + j] = kv[j];
      gens.push_back(std::move(v));
    }
  // Preimages of ker(V* (x) V* -> S^2 V*) under (sum H_i -> V*) (x) id.
  QMatrix phi = zero_matrix(9, dom);
  for (size_t f = 0; f < forms.size(); ++f)
    for (size_t b = 0; b < 3; ++b)
      for (size_t c = 0; c < 3; ++c) phi[c * 3 + b][f * 3 + b] = forms[f][c];
  for (const auto& w : ideal.antisymmetric.basis) {
    QMatrix aug = phi;
    for (size_t r = 0; r < 9; ++r) aug[r].push_back(w[r]);
    const std::vector<size_t> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == dom) continue;  // not in the image
    QVector x(dom, Rational(0));
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][dom];
    gens.push_back(std::move(x));
  }
  acc.degree3_generated = static_cast<Int>(span_rank(gens));
  acc.generators_suffice = acc.degree3_generated == acc.degree3_ideal;
  return acc;
}

size_t ParamAlgebra::middle_arrows() const {
  return static_cast<size_t>(convention == MiddleConvention::kPrinted ? k + 2 : k + 1);
}

ParamAlgebra mk_algebra(Int k, std::vector<Rational> p, std::vector<Rational> q, MiddleConvention convention) {
  if (k < 1) throw InvalidInput("k must be positive");
  if (p.size() != static_cast<size_t>(k) || q.size() != static_cast<size_t>(k)) {
    throw InvalidInput("need exactly k parameters p_i and k parameters q_i");
  }
  return {k, std::move(p), std::move(q), convention};
}

BoundQuiver ParamAlgebra::bound_quiver() const {
  BoundQuiver bq;
  Quiver& q0 = bq.quiver;
  q0.vertex_count = 4;
  q0.arrows.push_back({0, 1, "a1", std::nullopt, false});
  q0.arrows.push_back({0, 1, "a2", std::nullopt, false});
  const size_t m = middle_arrows();
  for (size_t i = 0; i < m; ++i) q0.arrows.push_back({1, 2, "l" + std::to_string(i), std::nullopt, false});
  q0.arrows.push_back({2, 3, "d1", std::nullopt, false});
  q0.arrows.push_back({2, 3, "d2", std::nullopt, false});
  const size_t a1 = 0, a2 = 1, d1 = 2 + m, d2 = 3 + m;
  const auto l = [](size_t i) { return 2 + i; };
  for (size_t i = 0; i < static_cast<size_t>(k); ++i)
    if (p[i] != 0) bq.relations.relations.push_back({{a1, l(i)}, {a2, l(i + 1)}});
  for (size_t i = 0; i < static_cast<size_t>(k); ++i)
    if (q[i] != 0) bq.relations.relations.push_back({{l(i), d1}, {l(i + 1), d2}});
  return bq;
}

BoundQuiver specialize(Int k, Int s, MiddleConvention convention) {
  if (s < 0 || 2 * s >= k + 1) {
    throw InvalidInput("s = " + std::to_string(s) + " outside 0 <= s < (k+1)/2 for k = " + std::to_string(k));
  }
  std::vector<Rational> p(static_cast<size_t>(k), Rational(1)), q(static_cast<size_t>(k), Rational(1));
  p[static_cast<size_t>(s)] = 0;
  q[static_cast<size_t>(s)] = 0;
  return mk_algebra(k, std::move(p), std::move(q), convention).bound_quiver();
}

ConventionReport reconcile_convention(Int k, Int s) {
  ConventionReport report;
  report.k = k;
  report.s = s;
  report.a = k - 1 - 2 * s;
  if (s < 0 || report.a < 0) throw InvalidInput("s outside 0 <= s < (k+1)/2");
  const ToricSystem system = hirzebruch_system(report.a, s);
  const BoundQuiver computed = build_quiver(to_sequence(system), tracked_hirzebruch(report.a));
  size_t quadratic = 0, higher = 0;
  for (const auto& r : computed.relations.relations) (r.lhs.size() == 2 && r.rhs.size() == 2 ? quadratic : higher)++;
  for (MiddleConvention c : {MiddleConvention::kPrinted, MiddleConvention::kMatched}) {
    const BoundQuiver spec = specialize(k, s, c);
    ConventionCheck check;
    check.convention = c;
    check.isomorphic = quiver_isomorphic(spec.quiver, computed.quiver);
    check.specialized_relations = spec.relations.size();
    check.computed_quadratic_relations = quadratic;
    check.computed_higher_relations = higher;
    report.checks.push_back(check);
  }
  return report;
}

namespace {

nlohmann::ordered_json vectors_json(const std::vector<QVector>& vs) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& v : vs) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (const auto& x : v) row.push_back(to_string(x));
    out.push_back(row);
  }
  return out;
}

nlohmann::ordered_json kernel_json(const KernelBasis& k) {
  nlohmann::ordered_json j;
  j["map"] = k.map;
  j["domain_dim"] = k.domain_dim;
  j["dim"] = k.dim();
  j["basis"] = vectors_json(k.basis);
  return j;
}

}  // namespace

nlohmann::ordered_json to_json(const RelationIdeal& ideal) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json per = nlohmann::ordered_json::array();
  for (const auto& k : ideal.per_point) per.push_back(kernel_json(k));
  j["per_point"] = per;
  j["hyperplane_sum"] = kernel_json(ideal.hyperplane_sum);
  j["antisymmetric"] = kernel_json(ideal.antisymmetric);
  return j;
}

nlohmann::ordered_json to_json(const AlgebraDimension& dims) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& e : dims.entries) {
    nlohmann::ordered_json x;
    x["space"] = e.space;
    x["identification"] = e.identification;
    x["dim"] = e.dim;
    entries.push_back(x);
  }
  j["entries"] = entries;
  j["total"] = dims.total;
  return j;
}

nlohmann::ordered_json to_json(const IdealAccounting& acc) {
  nlohmann::ordered_json j;
  j["dim_A"] = acc.dim_a;
  j["dim_A_X"] = acc.dim_ax;
  j["degree2_kernel"] = acc.degree2_kernel;
  j["per_point_kernels"] = acc.per_point_kernels;
  j["degree3_ideal"] = acc.degree3_ideal;
  j["degree3_generated"] = acc.degree3_generated;
  j["generators_suffice"] = acc.generators_suffice;
  j["cokernels"] = acc.cokernels;
  j["ideal_total"] = acc.ideal_total();
  return j;
}

nlohmann::ordered_json to_json(const ConventionReport& report) {
  nlohmann::ordered_json j;
  j["k"] = report.k;
  j["s"] = report.s;
  j["a"] = report.a;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json x;
    x["convention"] = c.convention == MiddleConvention::kPrinted ? "l0..l(k+1)" : "l0..lk";
    x["isomorphic"] = c.isomorphic;
    x["specialized_relations"] = c.specialized_relations;
    x["computed_quadratic_relations"] = c.computed_quadratic_relations;
    x["computed_higher_relations"] = c.computed_higher_relations;
    x["matches"] = c.matches();
    checks.push_back(x);
  }
  j["checks"] = checks;
  return j;
}

}  // namespace toricseq

// toricseq command-line tool.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "toricseq/augmentation.hpp"
#include "toricseq/cohomology.hpp"
#include "toricseq/deformations.hpp"
#include "toricseq/quivers.hpp"
#include "toricseq/reports.hpp"
#include "toricseq/sequences.hpp"

using namespace toricseq;
using json = nlohmann::ordered_json;

namespace {

struct Globals {
  std::string format = "json";
  std::string out;
  std::string s_range;
  size_t max_nodes = 0;
  std::uint64_t seed = 1;
};

Globals g;

// One rendered result plus the process exit code.
struct Output {
  json data;
  std::string text;
  std::string dot;
  int code = 0;
};

void emit(const Output& o) {
  std::string body;
  if (g.format == "json") {
    body = o.data.dump(2) + "\n";
  } else if (g.format == "dot") {
    if (o.dot.empty()) throw InvalidInput("--format dot is only available for quivers");
    body = o.dot;
  } else {
    body = o.text.empty() ? o.data.dump(2) + "\n" : o.text;
  }
  if (g.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw InvalidInput("cannot write " + g.out);
  f << body;
}

Output from_report(const Report& r) {
  return {to_json(r), to_text(r), "", r.exit_code()};
}

std::optional<SRange> parse_s_range(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidInput("--s-range expects lo:hi");
  try {
    SRange r{std::stoll(text.substr(0, colon)), std::stoll(text.substr(colon + 1))};
    if (r.lo > r.hi) throw InvalidInput("--s-range: lo exceeds hi");
    return r;
  } catch (const std::logic_error&) {
    throw InvalidInput("--s-range expects integers lo:hi, got '" + text + "'");
  }
}

std::pair<Int, Int> parse_int_range(const std::string& text, const char* flag) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      const Int v = std::stoll(text);
      return {v, v};
    }
    return {std::stoll(text.substr(0, colon)), std::stoll(text.substr(colon + 1))};
  } catch (const std::logic_error&) {
    throw InvalidInput(std::string(flag) + " expects lo:hi, got '" + text + "'");
  }
}

// "1,0;0,1" -> integer vectors.
std::vector<IntVec> parse_vectors(const std::string& text) {
  std::vector<IntVec> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ';');) {
    IntVec v;
    std::stringstream is(item);
    for (std::string tok; std::getline(is, tok, ',');) {
      try {
        size_t used = 0;
        v.push_back(std::stoll(tok, &used));
        if (used != tok.size() && tok.find_first_not_of(' ', used) != std::string::npos) throw std::invalid_argument(tok);
      } catch (const std::logic_error&) {
        throw InvalidInput("not an integer: '" + tok + "'");
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::string read_arg(const std::string& value) {
  if (value.empty() || value[0] != '@') return value;
  std::ifstream f(value.substr(1));
  if (!f) throw InvalidInput("cannot read " + value.substr(1));
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// A system from --system JSON (inline or @file) or --basis with --classes.
struct SystemArgs {
  std::string system;
  std::string basis;
  std::string classes;
  std::string base;
  std::string steps;

  ToricSystem load() const {
    if (!system.empty()) {
      json j = json::parse(read_arg(system));
      if (j.at("basis").is_string()) j["basis"] = to_json(parse_basis(j["basis"].get<std::string>()));
      return system_from_json(j);
    }
    if (basis.empty() || classes.empty()) throw InvalidInput("give --system, or --basis with --classes");
    const SurfaceBasis b = parse_basis(basis);
    std::vector<DivisorClass> cs;
    for (auto& v : parse_vectors(classes)) cs.emplace_back(b, std::move(v));
    return ToricSystem(std::move(cs));
  }

  // Tracked surface for the system's basis: the minimal model, or the
  // toric blow-up structure given by --base and --steps.
  ToricSurface surface(const ToricSystem& sys) const {
    const SurfaceBasis& b = sys.basis();
    if (steps.empty()) {
      if (b.t != 0) throw InvalidInput("basis " + b.to_string() + " needs --steps with torus-fixed cones");
      return b.kind == BaseKind::kP2 ? tracked_p2() : tracked_hirzebruch(b.a);
    }
    const auto st = parse_steps(steps);
    const BlowupStructure structure =
        b.kind == BaseKind::kP2 ? BlowupStructure::p2(st) : BlowupStructure::hirzebruch(b.a, st);
    if (!structure.toric()) throw InvalidInput("--steps must name torus-fixed cones (c<i>)");
    if (!(structure.final_basis() == b)) throw InvalidInput("--steps does not match basis " + b.to_string());
    return structure.surface();
  }

  static std::vector<BlowupStep> parse_steps(const std::string& text) { return BlowupStructure::parse_steps(text); }

  void add(CLI::App* app, bool with_steps = true) {
    app->add_option("--system", system, "toric system JSON {\"basis\",\"classes\"} or @file");
    app->add_option("--basis", basis, "basis P2:t or Fa:a:t");
    app->add_option("--classes", classes, "classes as coefficient vectors, e.g. 1;1;1");
    if (with_steps) app->add_option("--steps", steps, "torus-fixed blow-up cones, e.g. c0,c2");
  }
};

BlowupStructure parse_structure(const std::string& base, const std::string& steps) {
  const auto st = BlowupStructure::parse_steps(steps);
  if (base == "P2") return BlowupStructure::p2(st);
  if (base.rfind("Fa:", 0) == 0) {
    try {
      return BlowupStructure::hirzebruch(std::stoll(base.substr(3)), st);
    } catch (const std::logic_error&) {
    }
  }
  throw InvalidInput("--base expects P2 or Fa:<a>, got '" + base + "'");
}

std::string triple_text(const CohomologyTriple& c) {
  return std::to_string(c.h0) + " " + std::to_string(c.h1) + " " + std::to_string(c.h2) + "\n";
}

json triple_json(const CohomologyTriple& c) {
  json j;
  j["h0"] = c.h0;
  j["h1"] = c.h1;
  j["h2"] = c.h2;
  return j;
}

Output quiver_output(const BoundQuiver& q) {
  std::ostringstream text;
  const IntMatrix m = q.quiver.multiplicities();
  text << q.quiver.vertex_count << " vertices, " << q.quiver.arrows.size() << " arrows, " << q.relations.size()
       << " relations\n";
  for (const auto& row : m) text << to_string(row) << "\n";
  return {to_json(q), text.str(), export_dot(q), 0};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exceptional sequences of line bundles on toric surfaces"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "dot", "text"}));
  app.add_option("--out", g.out, "write output to a file");
  app.add_option("--s-range", g.s_range, "base parameter range lo:hi");
  app.add_option("--max-nodes", g.max_nodes, "search node budget, 0 for unlimited");
  app.add_option("--seed", g.seed, "seed for random point configurations");

  std::function<Output()> run;

  // validate-fan
  std::string rays;
  auto* vf = app.add_subcommand("validate-fan", "validate a fan and print its self-intersections");
  vf->add_option("--rays", rays, "rays x,y;x,y;... counterclockwise")->required();
  vf->callback([&] {
    run = [&] {
      const ToricSurface s = ToricSurface::from_rays(parse_rays(rays));
      json j = to_json(s);
      j["canonical_form"] = canonical_form(s);
      j["anticanonical_nef"] = anticanonical_nef(s);
      return Output{j, to_string(s.self_intersections()) + "\n", "", 0};
    };
  });

  // cohomology
  std::string coh_fan, coh_class, coh_divisor, coh_steps, coh_base;
  bool coh_points = false;
  auto* coh = app.add_subcommand("cohomology", "h0 h1 h2 of a line bundle");
  coh->add_option("--fan", coh_fan, "rays of a 3- or 4-ray fan, or any fan with --divisor");
  coh->add_option("--class", coh_class, "class coefficients over the basis");
  coh->add_option("--divisor", coh_divisor, "torus-invariant divisor coefficients d_1..d_n");
  coh->add_option("--base", coh_base, "P2 or Fa:a with --steps");
  coh->add_option("--steps", coh_steps, "torus-fixed blow-up cones");
  coh->add_flag("--points", coh_points, "include the lattice points of H^0");
  coh->callback([&] {
    run = [&] {
      ToricSurface surface = [&] {
        if (!coh_base.empty()) return parse_structure(coh_base, coh_steps).surface();
        if (coh_fan.empty()) throw InvalidInput("give --fan or --base");
        return ToricSurface::from_rays(parse_rays(coh_fan));
      }();
      IntVec d;
      json j;
      if (!coh_divisor.empty()) {
        const auto v = parse_vectors(coh_divisor);
        if (v.size() != 1 || v[0].size() != surface.size()) throw InvalidInput("--divisor needs one coefficient per ray");
        d = v[0];
      } else {
        const auto v = parse_vectors(coh_class);
        if (v.size() != 1) throw InvalidInput("--class expects one coefficient vector");
        if (!surface.tracked()) {
          if (surface.size() > 4) throw InvalidInput("fan has no class table; use --base/--steps or --divisor");
          surface = with_minimal_tracking(surface);
        }
        const DivisorClass cls(surface.basis(), v[0]);
        d = lift_class(surface, cls).d;
        j["class"] = cls.to_string();
      }
      const CohomologyTriple c = torus_cohomology(surface, d);
      j["divisor"] = d;
      j["cohomology"] = triple_json(c);
      if (coh_points) {
        json pts = json::array();
        for (const auto& p : section_basis(surface, d).points) pts.push_back(p);
        j["points"] = pts;
      }
      return Output{j, triple_text(c), "", 0};
    };
  });

  // toricsystem
  SystemArgs ts_args;
  std::string ts_action = "validate";
  Int ts_k = 1;
  auto* ts = app.add_subcommand("toricsystem", "validate, gale, rotate, reverse, dual, sequence");
  ts->add_option("action", ts_action, "operation")
      ->check(CLI::IsMember({"validate", "gale", "rotate", "reverse", "dual", "sequence", "canonical"}));
  ts_args.add(ts, false);
  ts->add_option("--k", ts_k, "rotation amount");
  ts->callback([&] {
    run = [&] {
      const ToricSystem sys = ts_args.load();
      json j;
      std::string text;
      int code = 0;
      if (ts_action == "validate") {
        const SystemValidation v = validate(sys);
        j["valid"] = v.valid;
        j["diagnostic"] = v.diagnostic;
        text = v.valid ? "valid\n" : "invalid: " + v.diagnostic + "\n";
        code = v.valid ? 0 : 1;
      } else if (ts_action == "gale") {
        const ToricSurface s = gale_dual(sys);
        j = to_json(s);
        j["canonical_form"] = canonical_form(s);
        text = to_string(s.self_intersections()) + "\n";
      } else if (ts_action == "sequence") {
        j = to_json(to_sequence(sys));
      } else {
        const ToricSystem r = ts_action == "rotate"    ? rotate(sys, ts_k)
                              : ts_action == "reverse" ? reverse(sys)
                              : ts_action == "dual"    ? dual_system(sys)
                                                       : canonical_system(sys);
        j = to_json(r);
        text = r.to_string() + "\n";
      }
      return Output{j, text, "", code};
    };
  });

  // augment
  std::string aug_action = "enumerate", aug_base = "P2", aug_steps;
  SystemArgs aug_sys;
  size_t aug_position = 0;
  auto* aug = app.add_subcommand("augment", "standard augmentations");
  aug->add_option("action", aug_action, "enumerate or insert")->check(CLI::IsMember({"enumerate", "insert"}));
  aug->add_option("--base", aug_base, "P2 or Fa:a");
  aug->add_option("--steps", aug_steps, "blow-up steps: c<i> torus-fixed, f fresh, i<j> infinitesimal");
  aug->add_option("--position", aug_position, "insertion position (0-based)");
  aug_sys.add(aug, false);
  aug->callback([&] {
    run = [&] {
      if (aug_action == "insert") {
        const ToricSystem r = augment(aug_sys.load(), aug_position);
        return Output{to_json(r), r.to_string() + "\n", "", 0};
      }
      const BlowupStructure st = parse_structure(aug_base, aug_steps);
      const SRange range = parse_s_range(g.s_range).value_or(SRange::standard(st.a()));
      json list = json::array();
      std::string text;
      for (const auto& a : enumerate_standard_augmentations(st, range)) {
        json e;
        e["s"] = a.s;
        e["positions"] = a.positions;
        e["system"] = to_json(a.system);
        list.push_back(e);
        text += "s=" + std::to_string(a.s) + "  " + a.system.to_string() + "\n";
      }
      return Output{list, text, "", 0};
    };
  });

  // check
  SystemArgs chk_args;
  std::string chk_mode = "strong";
  auto* chk = app.add_subcommand("check", "exceptional, strongly exceptional or cyclic check");
  chk_args.add(chk);
  chk->add_option("--mode", chk_mode, "exc|strong|cyclic")->check(CLI::IsMember({"exc", "strong", "cyclic"}));
  chk->callback([&] {
    run = [&] {
      const ToricSystem sys = chk_args.load();
      const ToricSurface s = chk_args.surface(sys);
      const CheckReport r = chk_mode == "exc"      ? check_exceptional(sys, s)
                            : chk_mode == "strong" ? check_strongly_exceptional(sys, s)
                                                   : check_cyclic_strong(sys, s);
      std::string text = r.verdict ? "yes\n" : "no\n";
      for (const auto& w : r.witnesses) text += "  " + w.condition + " " + w.divisor.to_string() + "\n";
      return Output{to_json(r), text, "", r.verdict ? 0 : 1};
    };
  });

  // decide
  std::string dec_fan, dec_mode = "strong";
  auto* dec = app.add_subcommand("decide", "existence of (cyclic) strongly exceptional sequences");
  dec->add_option("--fan", dec_fan, "rays")->required();
  dec->add_option("--mode", dec_mode, "strong|cyclic")->check(CLI::IsMember({"strong", "cyclic"}));
  dec->callback([&] {
    run = [&] {
      const ToricSurface s = ToricSurface::from_rays(parse_rays(dec_fan));
      const Decision d = dec_mode == "strong" ? decide_sE_existence_toric(s) : decide_cyclic_existence_toric(s);
      return Output{to_json(d), std::string(d.verdict ? "yes" : "no") + "\n", "", 0};
    };
  });

  // search (cyclic systems on one surface)
  std::string srch_fan;
  bool srch_serial = false, srch_hits = false;
  auto* srch = app.add_subcommand("search", "cyclic strongly exceptional standard augmentations on a surface");
  srch->add_option("--fan", srch_fan, "rays")->required();
  srch->add_flag("--serial", srch_serial, "use the serial reference search");
  srch->add_flag("--hits", srch_hits, "list every system");
  srch->callback([&] {
    run = [&] {
      const ToricSurface s = ToricSurface::from_rays(parse_rays(srch_fan));
      SearchOptions o;
      o.s_range = parse_s_range(g.s_range);
      o.max_nodes = g.max_nodes;
      const SearchResult r = srch_serial ? search_cyclic_systems_serial(s, o) : search_cyclic_systems(s, o);
      std::string text;
      for (const auto& t : r.associated_types) {
        const std::string n = census_name(t);
        text += (n.empty() ? to_string(t) : n) + "\n";
      }
      return Output{to_json(r, srch_hits), text, "", 0};
    };
  });

  // quiver
  SystemArgs q_args;
  bool q_cyclic = false;
  auto* qv = app.add_subcommand("quiver", "quiver with relations of a (cyclic) strongly exceptional system");
  q_args.add(qv);
  qv->add_flag("--cyclic", q_cyclic, "quiver of the helix");
  qv->callback([&] {
    run = [&] {
      const ToricSystem sys = q_args.load();
      const ToricSurface s = q_args.surface(sys);
      return quiver_output(q_cyclic ? build_cyclic_quiver(sys, s) : build_quiver(to_sequence(sys), s));
    };
  });

  // mckay
  std::string mk_orders, mk_weights;
  bool mk_table = false;
  auto* mk = app.add_subcommand("mckay", "McKay quiver of an abelian subgroup of SL3");
  mk->add_option("--orders", mk_orders, "cyclic factor orders, e.g. 2,4");
  mk->add_option("--weights", mk_weights, "three group elements, e.g. 0,1;1,0;1,3");
  mk->add_flag("--table", mk_table, "compare the five reference cases");
  mk->callback([&] {
    run = [&] {
      if (mk_table) return from_report(cmd_mckay_table());
      const auto orders = parse_vectors(mk_orders);
      if (orders.size() != 1) throw InvalidInput("--orders expects one list");
      BoundQuiver q;
      q.quiver = mckay_quiver({orders[0], parse_vectors(mk_weights)});
      return quiver_output(q);
    };
  });

  // deform
  std::string df_action = "ideal", df_points, df_convention = "printed";
  Int df_k = 1, df_s = 0, df_t = 1;
  auto* df = app.add_subcommand("deform", "relation ideals and parameter algebras");
  df->add_option("action", df_action, "ideal|dims|mk|reconcile")
      ->check(CLI::IsMember({"ideal", "dims", "mk", "reconcile"}));
  df->add_option("--points", df_points, "points x,y,z;... with rational coordinates");
  df->add_option("--t", df_t, "number of random points when --points is absent");
  df->add_option("--k", df_k, "parameter k");
  df->add_option("--s", df_s, "specialization index s");
  df->add_option("--convention", df_convention, "printed|matched")->check(CLI::IsMember({"printed", "matched"}));
  df->callback([&] {
    run = [&] {
      const auto config = [&] {
        if (!df_points.empty()) return PointConfig::parse(df_points);
        if (df_t < 1) throw InvalidInput("--t must be positive");
        return PointConfig::random(static_cast<size_t>(df_t), g.seed);
      };
      if (df_action == "ideal") {
        const PointConfig c = config();
        json j = to_json(relation_ideal(c));
        j["accounting"] = to_json(ideal_accounting(c));
        return Output{j, "", "", 0};
      }
      if (df_action == "dims") {
        const AlgebraDimension d = algebra_dimension_report(config());
        return Output{to_json(d), std::to_string(d.total) + "\n", "", 0};
      }
      if (df_action == "reconcile") {
        const ConventionReport r = reconcile_convention(df_k, df_s);
        return Output{to_json(r), "", "", 0};
      }
      const auto conv = df_convention == "printed" ? MiddleConvention::kPrinted : MiddleConvention::kMatched;
      return quiver_output(specialize(df_k, df_s, conv));
    };
  });

  // tables
  bool t1_all = false;
  size_t t1_rays = 9;
  auto* t1 = app.add_subcommand("table1", "weak del Pezzo census against the reference table");
  t1->add_flag("--no-nef-filter", t1_all, "keep surfaces with self-intersections below -2");
  t1->add_option("--max-rays", t1_rays, "largest ray count");
  t1->callback([&] { run = [&] { return from_report(cmd_table1({!t1_all, t1_rays})); }; });

  auto* t2 = app.add_subcommand("table2", "cyclic quivers of rank <= 2 systems");
  t2->callback([&] { run = [&] { return from_report(cmd_table2()); }; });

  bool t3_serial = false;
  auto* t3 = app.add_subcommand("table3", "associated types of cyclic systems on the census");
  t3->add_flag("--serial", t3_serial, "use the serial reference search");
  t3->callback([&] {
    run = [&] {
      SearchOptions o;
      o.s_range = parse_s_range(g.s_range);
      o.max_nodes = g.max_nodes;
      return from_report(cmd_table3(o, !t3_serial));
    };
  });

  int dims_t = 5;
  auto* dims = app.add_subcommand("dims", "dimension formulas for blow-ups of P2");
  dims->add_option("--t-max", dims_t, "largest number of points (<= 6)");
  dims->callback([&] { run = [&] { return from_report(cmd_dims(dims_t, g.seed)); }; });

  std::string ce_range = "0:6";
  auto* ce = app.add_subcommand("counterexample", "existence decisions for the counterexample family");
  ce->add_option("--k-range", ce_range, "k range lo:hi");
  ce->callback([&] {
    run = [&] {
      const auto [lo, hi] = parse_int_range(ce_range, "--k-range");
      return from_report(cmd_counterexample(lo, hi));
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    const Output o = run();
    emit(o);
    return o.code;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: bad JSON: " << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

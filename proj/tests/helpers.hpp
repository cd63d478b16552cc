#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "oracles.hpp"
#include "toricseq/augmentation.hpp"
#include "toricseq/fans.hpp"
#include "toricseq/reference_data.hpp"
#include "toricseq/reports.hpp"
#include "toricseq/sequences.hpp"

namespace testing {

using namespace toricseq;

inline std::vector<oracle::V2> plain_rays(const ToricSurface& s) {
  return {s.rays().begin(), s.rays().end()};
}

inline ToricSurface minimal_surface(const SurfaceBasis& b) {
  return b.kind == BaseKind::kP2 ? tracked_p2() : tracked_hirzebruch(b.a);
}

inline ToricSystem system_from_row(const nlohmann::ordered_json& row) {
  const SurfaceBasis basis = parse_basis(row.at("basis").get<std::string>());
  std::vector<DivisorClass> classes;
  for (const auto& c : row.at("classes")) classes.emplace_back(basis, c.get<IntVec>());
  return ToricSystem(std::move(classes));
}

inline ToricSurface surface_from_row(const nlohmann::ordered_json& row) {
  if (!row.contains("chain") || row.at("chain").is_null())
    return minimal_surface(parse_basis(row.at("basis").get<std::string>()));
  const auto chains = minimal_model_chains(census_surface(row.at("surface").get<std::string>()));
  return track_chain(chains.at(row.at("chain").get<size_t>()));
}

struct Golden {
  std::string name;
  ToricSystem system;
  ToricSurface surface;
};

// Systems with known verdicts: the base systems, the blow-up displays on
// toric models, and the cyclic systems of the reference tables.
inline std::vector<Golden> golden_systems() {
  std::vector<Golden> out;
  out.push_back({"P2", p2_system(), tracked_p2()});
  for (Int a = 0; a <= 3; ++a)
    for (Int s = -1; s <= a + 1; ++s)
      out.push_back({"F" + std::to_string(a) + " s=" + std::to_string(s), hirzebruch_system(a, s), tracked_hirzebruch(a)});
  for (size_t t = 1; t <= 3; ++t) {
    const BlowupStructure st = distinct_fixed_points(BaseKind::kP2, 0, t);
    out.push_back({"blowup-once t=" + std::to_string(t), blowup_once_system(st), st.surface()});
    for (size_t r = 0; r <= t; ++r)
      out.push_back({"P2 display t=" + std::to_string(t) + " r=" + std::to_string(r), two_step_system(st, r), st.surface()});
  }
  for (Int a = 0; a <= 2; ++a)
    for (size_t t = 1; t <= 2; ++t) {
      const BlowupStructure st = distinct_fixed_points(BaseKind::kHirzebruch, a, t);
      for (size_t r = 0; r <= t; ++r)
        for (Int s = -1; s <= a + 1; ++s)
          out.push_back({"F" + std::to_string(a) + " display t=" + std::to_string(t) + " r=" + std::to_string(r) +
                             " s=" + std::to_string(s),
                         two_step_system(st, r, s), st.surface()});
    }
  const auto& ref = reference_tables();
  for (const auto& row : ref.at("table2"))
    out.push_back({"table2 " + row.at("surface").get<std::string>(), system_from_row(row), surface_from_row(row)});
  for (const auto& row : ref.at("table4"))
    out.push_back({"table4 " + row.at("surface").get<std::string>(), system_from_row(row), surface_from_row(row)});
  return out;
}

inline std::vector<ToricSurface> census() {
  std::vector<ToricSurface> out;
  for (const auto& [name, cycle] : census_names()) out.push_back(surface_from_self_intersections(cycle));
  return out;
}

// Every tracked model of every census surface.
inline std::vector<ToricSurface> tracked_census() {
  std::vector<ToricSurface> out;
  for (const auto& s : census())
    for (const auto& chain : minimal_model_chains(s)) out.push_back(track_chain(chain));
  return out;
}

}  // namespace testing

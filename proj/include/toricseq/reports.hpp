#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "toricseq/quivers.hpp"
#include "toricseq/sequences.hpp"

namespace toricseq {

inline constexpr int kReportSchemaVersion = 1;

/// Outcome of a table-reproduction command.
struct Report {
  std::string command;
  bool matched = false;
  std::string summary;             // one line, e.g. "16/16 matched"
  std::vector<std::string> diffs;  // one entry per mismatch
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  std::optional<std::uint64_t> seed;

  int exit_code() const { return matched ? 0 : 1; }
};

nlohmann::ordered_json to_json(const Report& report);
std::string to_text(const Report& report);

// -- reference surfaces ------------------------------------------------------

/// Table 1 names in order, with their printed cycles.
std::vector<std::pair<std::string, IntVec>> census_names();
/// Name of a surface in the census, or "" when it is not there.
std::string census_name(const IntVec& cycle);
ToricSurface census_surface(const std::string& name);

/// Picture quivers from the reference data, vertices renumbered from 0.
Quiver reference_picture(const nlohmann::ordered_json& row);

/// The counterexample fan with parameter k.
ToricSurface counterexample_surface(Int k);

// -- commands ----------------------------------------------------------------

struct Table1Options {
  bool nef_only = true;
  size_t max_rays = 9;
};

Report cmd_table1(const Table1Options& options = {});
Report cmd_table2();
Report cmd_table3(const SearchOptions& options = {}, bool parallel = true);
/// Table 4: cyclic quivers against McKay quivers.
Report cmd_mckay_table();
Report cmd_dims(int t_max = 5, std::uint64_t seed = 1);
Report cmd_counterexample(Int k_lo = 0, Int k_hi = 6);

}  // namespace toricseq

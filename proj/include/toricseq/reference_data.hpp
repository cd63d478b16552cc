#pragma once

#include <string_view>

#include "json.hpp"

namespace toricseq {

/// Reference tables compiled in from data/reference_tables.json.
std::string_view reference_tables_text();
const nlohmann::ordered_json& reference_tables();

}  // namespace toricseq

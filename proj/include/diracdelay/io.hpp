#pragma once

// JSON (de)serialization for the value types exchanged through the CLI, plus
// small file helpers. Complex arrays are stored as parallel re/im arrays.

#include <string>
#include <vector>

#include <json.hpp>

#include "diracdelay/inverse.hpp"
#include "diracdelay/stability.hpp"

namespace diracdelay {

nlohmann::json to_json(const PotentialPair& pp);
PotentialPair potential_pair_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Spectrum& s);
Spectrum spectrum_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SubspectrumSpec& spec);
SubspectrumSpec subspectrum_from_json(const nlohmann::json& j);

nlohmann::json to_json(const TypeReport& rep);
nlohmann::json to_json(const StabilityReport& rep);

// trial,kind,rhs,lhs,ratio,excluded
std::string stability_csv(const std::vector<StabilityTrial>& trials);

// Shortest round-trip decimal form, stable across runs.
std::string format_double(double x);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace diracdelay

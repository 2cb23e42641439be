#pragma once

// JSON readers and writers for graphings, relations, rotation configs and
// group configs. Readers validate every domain invariant and throw Error with
// a location ("maps[1].pairs[4]" or the parser's line/column) on failure.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "costlab/rotation.hpp"
#include "costlab/schreier.hpp"
#include "costlab/space.hpp"

namespace costlab::io {

using Json = nlohmann::ordered_json;

/// Parses text, converting syntax errors into Error with line and column.
Json parse_json(std::string_view text, const std::string& source);
Json read_json_file(const std::string& path);

/// {"space":{"n":N},"maps":[{"name":..,"pairs":[[x,y],..]} |
///  {"name":..,"rotation":s,"domain":"all"|{"arc":[start,len]}|[atoms..]}]}
Graphing graphing_from_json(const Json& j);
Json graphing_to_json(const Graphing& g);
Json map_to_json(const PartialMap& m);

/// {"n":N,"classes":[[..],..]}
Relation relation_from_json(const Json& j);
Json relation_to_json(const Relation& r);

struct RotationConfig {
  rotation::RotationSystem system;
  std::string full;
  std::vector<Rational> eps;
};

/// {"n":..,"steps":{"a":1,"b":357913},"full":"a","eps":[..]}. Eps entries
/// may be numbers or strings ("1/1000", "0.001") and are read exactly.
RotationConfig rotation_config_from_json(const Json& j);

struct GroupConfig {
  schreier::GroupSpec spec;
  std::vector<std::uint64_t> indices;
  std::uint64_t seed = 0;
};

/// {"factors":[2,3],"indices":[6,12,..],"seed":42}. Every index is checked
/// against the factor orders before anything is computed.
GroupConfig group_config_from_json(const Json& j);

/// Exact value of a JSON number or string.
Rational rational_from_json(const Json& j, const std::string& where);

}  // namespace costlab::io

#include "costlab/io.hpp"

#include <fstream>
#include <sstream>

#include "costlab/error.hpp"

namespace costlab::io {

namespace {

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw Error(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw Error(where + ": missing \"" + key + "\"");
  return *it;
}

std::uint64_t to_unsigned(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0)) {
    throw Error(where + ": expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

std::int64_t to_signed(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw Error(where + ": expected an integer");
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
    throw Error(where + ": integer too large");
  }
  return j.get<std::int64_t>();
}

std::vector<Atom> atom_list(const Json& j, const std::string& where) {
  if (!j.is_array()) throw Error(where + ": expected an array of atoms");
  std::vector<Atom> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(to_unsigned(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

PartialMap map_from_json(const Json& j, const FiniteSpace& space, const std::string& where) {
  const auto& name_json = require(j, "name", where);
  if (!name_json.is_string()) throw Error(where + ".name: expected a string");
  const std::string name = name_json.get<std::string>();
  const std::size_t n = space.size();
  std::vector<AtomPair> pairs;

  if (j.contains("pairs")) {
    const auto& pj = j["pairs"];
    if (!pj.is_array()) throw Error(where + ".pairs: expected an array");
    pairs.reserve(pj.size());
    for (std::size_t i = 0; i < pj.size(); ++i) {
      const std::string at = where + ".pairs[" + std::to_string(i) + "]";
      if (!pj[i].is_array() || pj[i].size() != 2) throw Error(at + ": expected [source, target]");
      pairs.emplace_back(to_unsigned(pj[i][0], at), to_unsigned(pj[i][1], at));
    }
  } else if (j.contains("rotation")) {
    const std::int64_t s = to_signed(j["rotation"], where + ".rotation");
    const auto m = static_cast<std::int64_t>(n);
    const auto shift = static_cast<std::size_t>(((s % m) + m) % m);
    std::vector<Atom> domain;
    const auto& dj = require(j, "domain", where);
    if (dj.is_string()) {
      if (dj.get<std::string>() != "all") throw Error(where + ".domain: expected \"all\"");
      domain.resize(n);
      for (Atom x = 0; x < n; ++x) domain[x] = x;
    } else if (dj.is_object()) {
      const auto& arc = require(dj, "arc", where + ".domain");
      if (!arc.is_array() || arc.size() != 2) throw Error(where + ".domain.arc: expected [start, len]");
      rotation::Arc a{to_unsigned(arc[0], where + ".domain.arc[0]"), to_unsigned(arc[1], where + ".domain.arc[1]")};
      try {
        domain = a.to_subset(n).members();
      } catch (const Error& e) {
        throw Error(where + ".domain.arc: " + e.what());
      }
    } else {
      domain = atom_list(dj, where + ".domain");
    }
    pairs.reserve(domain.size());
    for (Atom x : domain) {
      if (x >= n) throw Error(where + ".domain: atom " + std::to_string(x) + " out of range");
      pairs.emplace_back(x, (x + shift) % n);
    }
  } else {
    throw Error(where + ": map needs \"pairs\" or \"rotation\"");
  }

  try {
    return PartialMap(name, space, std::move(pairs));
  } catch (const Error& e) {
    throw Error(where + ": " + e.what());
  }
}

}  // namespace

Json parse_json(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // The parser reports "at line L, column C" in its message.
    throw Error(source + ": malformed JSON: " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path);
}

Graphing graphing_from_json(const Json& j) {
  const auto& space_json = require(j, "space", "graphing");
  const auto n = to_unsigned(require(space_json, "n", "graphing.space"), "graphing.space.n");
  if (n == 0) throw Error("graphing.space.n: must be at least 1");
  const FiniteSpace space(n);
  const auto& maps_json = require(j, "maps", "graphing");
  if (!maps_json.is_array()) throw Error("graphing.maps: expected an array");
  std::vector<PartialMap> maps;
  for (std::size_t i = 0; i < maps_json.size(); ++i) {
    maps.push_back(map_from_json(maps_json[i], space, "maps[" + std::to_string(i) + "]"));
  }
  return Graphing(space, std::move(maps));
}

Json map_to_json(const PartialMap& m) {
  Json pairs = Json::array();
  for (auto [x, y] : m.pairs()) pairs.push_back(Json::array({x, y}));
  return Json{{"name", m.name()}, {"pairs", std::move(pairs)}};
}

Json graphing_to_json(const Graphing& g) {
  Json maps = Json::array();
  for (const auto& m : g.maps()) maps.push_back(map_to_json(m));
  return Json{{"space", Json{{"n", g.space().size()}}}, {"maps", std::move(maps)}};
}

Relation relation_from_json(const Json& j) {
  const auto n = to_unsigned(require(j, "n", "relation"), "relation.n");
  if (n == 0) throw Error("relation.n: must be at least 1");
  const auto& cj = require(j, "classes", "relation");
  if (!cj.is_array()) throw Error("relation.classes: expected an array");
  std::vector<std::vector<Atom>> classes;
  for (std::size_t i = 0; i < cj.size(); ++i) {
    classes.push_back(atom_list(cj[i], "relation.classes[" + std::to_string(i) + "]"));
  }
  try {
    return Relation::from_classes(FiniteSpace(n), classes);
  } catch (const Error& e) {
    throw Error(std::string("relation: ") + e.what());
  }
}

Json relation_to_json(const Relation& r) {
  return Json{{"n", r.space().size()}, {"classes", r.classes()}};
}

Rational rational_from_json(const Json& j, const std::string& where) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    // dump() prints the shortest text that round-trips, i.e. what was written.
    if (j.is_number()) return parse_rational(j.dump());
  } catch (const Error& e) {
    throw Error(where + ": " + e.what());
  }
  throw Error(where + ": expected a number or a rational string");
}

RotationConfig rotation_config_from_json(const Json& j) {
  const auto n = to_unsigned(require(j, "n", "config"), "config.n");
  const auto& sj = require(j, "steps", "config");
  if (!sj.is_object()) throw Error("config.steps: expected an object of name -> amount");
  std::vector<std::pair<std::string, std::int64_t>> steps;
  for (auto it = sj.begin(); it != sj.end(); ++it) {
    steps.emplace_back(it.key(), to_signed(it.value(), "config.steps." + it.key()));
  }
  const auto& fj = require(j, "full", "config");
  if (!fj.is_string()) throw Error("config.full: expected a step name");
  std::vector<Rational> eps;
  if (j.contains("eps")) {
    const auto& ej = j["eps"];
    if (!ej.is_array()) throw Error("config.eps: expected an array");
    for (std::size_t i = 0; i < ej.size(); ++i) {
      eps.push_back(rational_from_json(ej[i], "config.eps[" + std::to_string(i) + "]"));
    }
  }
  RotationConfig cfg{rotation::RotationSystem(n, steps), fj.get<std::string>(), std::move(eps)};
  cfg.system.step(cfg.full);  // unknown name -> Error
  for (std::size_t i = 0; i < cfg.eps.size(); ++i) {
    try {
      rotation::arc_length_for(cfg.eps[i], n);
    } catch (const Error& e) {
      throw Error("config.eps[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return cfg;
}

GroupConfig group_config_from_json(const Json& j) {
  const auto& fj = require(j, "factors", "config");
  if (!fj.is_array()) throw Error("config.factors: expected an array");
  std::vector<std::uint64_t> orders;
  for (std::size_t i = 0; i < fj.size(); ++i) {
    orders.push_back(to_unsigned(fj[i], "config.factors[" + std::to_string(i) + "]"));
  }
  GroupConfig cfg{schreier::GroupSpec(orders), {}, 0};
  if (j.contains("indices")) {
    const auto& ij = j["indices"];
    if (!ij.is_array()) throw Error("config.indices: expected an array");
    for (std::size_t i = 0; i < ij.size(); ++i) {
      const auto index = to_unsigned(ij[i], "config.indices[" + std::to_string(i) + "]");
      if (!cfg.spec.admits_index(index)) {
        throw Error("config.indices[" + std::to_string(i) + "]: index " + std::to_string(index) +
                    " is not a positive multiple of " + std::to_string(cfg.spec.index_step()));
      }
      cfg.indices.push_back(index);
    }
  }
  if (j.contains("seed")) cfg.seed = to_unsigned(j["seed"], "config.seed");
  return cfg;
}

}  // namespace costlab::io

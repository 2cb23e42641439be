#include "costlab/cli.hpp"

#include <algorithm>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "costlab/error.hpp"
#include "costlab/io.hpp"
#include "costlab/rel_core.hpp"
#include "costlab/rotation.hpp"
#include "costlab/schreier.hpp"

namespace costlab::cli {

namespace {

using io::Json;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

// Fields appear in insertion order. Tables render as aligned text or as a
// JSON array of objects keyed by column name.
struct Report {
  std::string command;
  Json fields = Json::object();
  std::optional<Table> table;

  void set(const std::string& key, Json value) { fields[key] = std::move(value); }
};

std::string text_value(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void render_text(const Report& report, std::ostream& out) {
  out << report.command << "\n";
  std::size_t width = 0;
  for (auto it = report.fields.begin(); it != report.fields.end(); ++it) width = std::max(width, it.key().size());
  for (auto it = report.fields.begin(); it != report.fields.end(); ++it) {
    out << "  " << it.key() << std::string(width - it.key().size(), ' ') << "  " << text_value(it.value()) << "\n";
  }
  if (!report.table) return;
  const auto& t = *report.table;
  std::vector<std::size_t> widths(t.columns.size());
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    widths[c] = t.columns[c].size();
    for (const auto& row : t.rows) widths[c] = std::max(widths[c], row[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      s += cells[c];
      if (c + 1 < cells.size()) s += std::string(widths[c] - cells[c].size() + 2, ' ');
    }
    out << s << "\n";
  };
  line(t.columns);
  for (const auto& row : t.rows) line(row);
}

void render_json(const Report& report, std::ostream& out) {
  Json j = Json::object();
  j["command"] = report.command;
  for (auto it = report.fields.begin(); it != report.fields.end(); ++it) j[it.key()] = it.value();
  if (report.table) {
    Json rows = Json::array();
    for (const auto& row : report.table->rows) {
      Json obj = Json::object();
      for (std::size_t c = 0; c < row.size(); ++c) obj[report.table->columns[c]] = row[c];
      rows.push_back(std::move(obj));
    }
    j["rows"] = std::move(rows);
  }
  out << j.dump(2) << "\n";
}

std::string str(const Rational& r) { return to_string(r); }
std::string yes_no(bool b) { return b ? "true" : "false"; }

std::vector<std::uint64_t> parse_u64_list(const std::string& text, const char* what) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw UsageError(std::string("bad ") + what + " list '" + text + "'");
    }
    out.push_back(std::stoull(item));
  }
  if (out.empty()) throw UsageError(std::string("empty ") + what + " list");
  return out;
}

// "a,b,c" or "start:stop:step" (stop inclusive).
std::vector<std::uint64_t> parse_indices(const std::string& text) {
  if (text.find(':') == std::string::npos) return parse_u64_list(text, "index");
  std::vector<std::uint64_t> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(parse_u64_list(item, "range")[0]);
  if (parts.size() != 3 || parts[2] == 0 || parts[0] > parts[1]) {
    throw UsageError("bad index range '" + text + "' (expected start:stop:step)");
  }
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = parts[0]; i <= parts[1]; i += parts[2]) out.push_back(i);
  return out;
}

schreier::GroupSpec parse_factors(const std::string& text) {
  return schreier::GroupSpec(parse_u64_list(text, "factor"));
}

Subset subset_from_options(const FiniteSpace& space, const std::string& subset, const std::string& arc) {
  if (!subset.empty() && !arc.empty()) throw UsageError("give either --subset or --arc, not both");
  if (!arc.empty()) {
    auto parts = parse_u64_list(arc, "arc");
    if (parts.size() != 2) throw UsageError("--arc expects start,len");
    return rotation::Arc{parts[0], parts[1]}.to_subset(space.size());
  }
  if (subset.empty()) throw UsageError("a subset is required (--subset or --arc)");
  auto atoms = parse_u64_list(subset, "subset");
  return Subset(space, std::vector<Atom>(atoms.begin(), atoms.end()));
}

Json table_json(const Graphing& g) {
  return io::graphing_to_json(g);
}

// Evenly spread deterministic sample of atoms.
std::vector<Atom> sample_atoms(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(schreier::mix_seed(seed, 0x726F74, 0));
  std::vector<Atom> xs(count);
  for (auto& x : xs) x = static_cast<Atom>(rng() % n);
  return xs;
}

struct Options {
  std::string format = "text";
  std::uint64_t seed = 0;
  std::size_t edge_budget = rel::kDefaultEdgeBudget;

  std::vector<std::string> inputs;
  std::string map_name;
  std::string subset;
  std::string arc;
  std::string factors;
  std::string indices;
  std::string specs;
  std::string restricted;
  std::uint64_t index = 0;
  std::uint64_t index_cap = schreier::kDefaultIndexCap;
  std::size_t samples = 1;
  std::size_t points = 1000;
};

const std::string& input(const Options& o, std::size_t i, const char* what) {
  if (o.inputs.size() <= i) throw UsageError(std::string("missing ") + what + " file");
  return o.inputs[i];
}

Graphing load_graphing(const std::string& path) { return io::graphing_from_json(io::read_json_file(path)); }
Relation load_relation(const std::string& path) { return io::relation_from_json(io::read_json_file(path)); }

io::GroupConfig group_config(const Options& o, bool need_indices) {
  if (!o.inputs.empty()) {
    if (!o.factors.empty()) throw UsageError("give either a config file or --factors");
    auto cfg = io::group_config_from_json(io::read_json_file(o.inputs[0]));
    if (!o.indices.empty()) throw UsageError("indices come from the config file");
    if (need_indices && cfg.indices.empty()) throw UsageError("config has no indices");
    return cfg;
  }
  if (o.factors.empty()) throw UsageError("--factors is required");
  io::GroupConfig cfg{parse_factors(o.factors), {}, o.seed};
  if (!o.indices.empty()) cfg.indices = parse_indices(o.indices);
  if (o.index != 0) cfg.indices.push_back(o.index);
  if (need_indices && cfg.indices.empty()) throw UsageError("--index or --indices is required");
  for (auto i : cfg.indices) {
    if (!cfg.spec.admits_index(i)) {
      throw Error("index " + std::to_string(i) + " is not a positive multiple of " +
                  std::to_string(cfg.spec.index_step()) + " (every finite factor order must divide it)");
    }
  }
  return cfg;
}

Json rational_list(const std::vector<Rational>& v) {
  Json j = Json::array();
  for (const auto& r : v) j.push_back(str(r));
  return j;
}

Report dispatch(const std::string& cmd, const Options& o) {
  Report rep{cmd, Json::object(), std::nullopt};

  if (cmd == "cost") {
    auto g = load_graphing(input(o, 0, "graphing"));
    rep.set("cost", str(rel::cost(g)));
  } else if (cmd == "nu") {
    auto g = load_graphing(input(o, 0, "graphing"));
    auto s = rel::to_edge_set(g);
    rep.set("nu", str(rel::nu_measure(s)));
    rep.set("cost", str(rel::cost(g)));
    rep.set("edges", s.edges().size());
    rep.set("loops", s.loop_count());
  } else if (cmd == "gen-check") {
    auto g = load_graphing(input(o, 0, "graphing"));
    auto r = load_relation(input(o, 1, "relation"));
    rep.set("generates", rel::generates(g, r));
    auto gen = rel::generated_relation(g);
    rep.set("generated_classes", gen.class_count());
    rep.set("target_classes", r.class_count());
  } else if (cmd == "treeing") {
    auto g = load_graphing(input(o, 0, "graphing"));
    rep.set("is_treeing", rel::is_treeing(g));
    rep.set("cost", str(rel::cost(g)));
    rep.set("min_cost", str(rel::min_cost(rel::generated_relation(g))));
  } else if (cmd == "min-cost") {
    auto r = load_relation(input(o, 0, "relation"));
    auto t = rel::spanning_treeing(r);
    rep.set("min_cost", str(rel::min_cost(r)));
    rep.set("classes", r.class_count());
    rep.set("transversal_measure", str(rel::transversal(r).measure()));
    rep.set("spanning_treeing_cost", str(rel::cost(t)));
  } else if (cmd == "reduce") {
    auto g = load_graphing(input(o, 0, "graphing"));
    auto t = rel::reduce_to_treeing(g);
    rep.set("cost_before", str(rel::cost(g)));
    rep.set("cost_after", str(rel::cost(t)));
    rep.set("min_cost", str(rel::min_cost(rel::generated_relation(g))));
    rep.set("is_treeing", rel::is_treeing(t));
    rep.set("graphing", table_json(t));
  } else if (cmd == "single-gen") {
    auto r = load_relation(input(o, 0, "relation"));
    auto psi = rel::single_full_generator(r);
    Graphing g(r.space(), {psi});
    rep.set("cost", str(rel::cost(g)));
    rep.set("generates", rel::generates(g, r));
    rep.set("map", io::map_to_json(psi));
  } else if (cmd == "first-return") {
    auto g = load_graphing(input(o, 0, "graphing"));
    if (g.maps().empty()) throw Error("graphing has no maps");
    const PartialMap* psi = o.map_name.empty() ? &g.maps().front() : g.find(o.map_name);
    if (psi == nullptr) throw Error("unknown map '" + o.map_name + "'");
    auto a = subset_from_options(g.space(), o.subset, o.arc);
    auto ret = rel::first_return_map(*psi, a);
    auto times = rel::return_times(*psi, a);
    std::size_t total = 0;
    for (auto t : times) total += t;
    rep.set("subset_size", a.size());
    rep.set("return_time_sum", total);
    rep.set("map", io::map_to_json(ret));
  } else if (cmd == "compress") {
    auto r = load_relation(input(o, 0, "relation"));
    auto a = subset_from_options(r.space(), o.subset, o.arc);
    auto [lhs, rhs] = rel::compression_sides(r, a);
    rep.set("lhs", str(lhs));
    rep.set("rhs", str(rhs));
    rep.set("lhs_le_rhs", lhs <= rhs);
    rep.set("equal", lhs == rhs);
  } else if (cmd == "brute-min") {
    auto r = load_relation(input(o, 0, "relation"));
    rep.set("brute_force_min_cost", str(rel::brute_force_min_cost(r, o.edge_budget)));
    rep.set("min_cost", str(rel::min_cost(r)));
  } else if (cmd == "rotation-demo") {
    auto cfg = io::rotation_config_from_json(io::read_json_file(input(o, 0, "config")));
    if (cfg.eps.empty()) throw Error("config.eps: rotation-demo needs at least one eps");
    const auto& sys = cfg.system;
    const std::size_t n = sys.modulus();
    const rotation::Arc arc{0, rotation::arc_length_for(cfg.eps.front(), n)};
    auto g = rotation::epsilon_graphing(sys, cfg.full, arc);
    rep.set("n", n);
    rep.set("eps", str(cfg.eps.front()));
    rep.set("arc_len", arc.len);
    rep.set("cost", str(rel::cost(g)));
    rep.set("generates", rel::generates(g, rotation::expected_relation(sys)));
    rep.set("is_treeing", rel::is_treeing(g));
    const auto xs = sample_atoms(n, o.points, o.seed);
    Table t{{"restricted", "points", "failures", "max_path_length"}, {}};
    bool all_ok = true;
    for (const auto& s : sys.steps()) {
      if (s.name == cfg.full) continue;
      if (!o.restricted.empty() && s.name != o.restricted) continue;
      auto summary = rotation::verify_connection_paths(sys, cfg.full, s.name, arc, xs);
      all_ok = all_ok && summary.failures == 0;
      t.rows.push_back({s.name, std::to_string(summary.checked), std::to_string(summary.failures),
                        std::to_string(summary.max_length)});
    }
    rep.set("paths_ok", all_ok);
    rep.table = std::move(t);
  } else if (cmd == "eps-curve") {
    auto cfg = io::rotation_config_from_json(io::read_json_file(input(o, 0, "config")));
    auto curve = rotation::cost_epsilon_curve(cfg.system, cfg.full, cfg.eps);
    rep.set("n", cfg.system.modulus());
    rep.set("full", cfg.full);
    rep.set("infimum", curve.infimum ? Json(str(*curve.infimum)) : Json(nullptr));
    Table t{{"eps", "arc_len", "cost", "generates"}, {}};
    for (const auto& row : curve.rows) {
      t.rows.push_back({str(row.eps), std::to_string(row.arc_len), str(row.cost), yes_no(row.generates)});
    }
    rep.table = std::move(t);
  } else if (cmd == "invariants") {
    auto cfg = group_config(o, false);
    auto inv = schreier::group_invariants(cfg.spec);
    rep.set("factors", cfg.spec.factor_orders());
    rep.set("beta1", str(inv.beta1));
    rep.set("predicted_cost", str(inv.predicted_cost));
    rep.set("rank", inv.rank);
    rep.set("factor_costs", rational_list(inv.factor_costs));
  } else if (cmd == "schreier-rank") {
    auto cfg = group_config(o, true);
    Table t{{"index", "rank", "euler_rank", "cycle_rank"}, {}};
    for (auto i : cfg.indices) {
      auto act = schreier::sample_free_action(cfg.spec, i, cfg.seed);
      auto p = schreier::subgroup_rank(act);
      t.rows.push_back({std::to_string(i), std::to_string(p),
                        std::to_string(schreier::rank_by_euler_characteristic(cfg.spec, i)),
                        std::to_string(schreier::rank_by_cycle_rank(act))});
    }
    rep.set("factors", cfg.spec.factor_orders());
    rep.set("seed", cfg.seed);
    rep.table = std::move(t);
  } else if (cmd == "rank-gradient") {
    auto cfg = group_config(o, true);
    auto rows = schreier::rank_gradient(cfg.spec, cfg.indices, cfg.seed, o.samples);
    auto inv = schreier::group_invariants(cfg.spec);
    bool all = true;
    Table t{{"index", "rank", "(rank-1)/index", "beta1", "match"}, {}};
    for (const auto& r : rows) {
      all = all && r.match;
      t.rows.push_back({std::to_string(r.index), std::to_string(r.rank), str(r.gradient), str(r.beta1),
                        yes_no(r.match)});
    }
    rep.set("factors", cfg.spec.factor_orders());
    rep.set("seed", cfg.seed);
    rep.set("samples", o.samples);
    rep.set("predicted_cost", str(inv.predicted_cost));
    rep.set("cost_estimate", rows.empty() ? Json(nullptr) : Json(str(1 + rows.back().gradient)));
    rep.set("all_match", all);
    rep.table = std::move(t);
  } else if (cmd == "compress-check") {
    auto cfg = group_config(o, true);
    Table t{{"index", "lhs", "rhs", "equal"}, {}};
    bool all = true;
    for (auto i : cfg.indices) {
      auto [lhs, rhs] = schreier::compression_check(cfg.spec, i, cfg.seed);
      all = all && lhs == rhs;
      t.rows.push_back({std::to_string(i), str(lhs), str(rhs), yes_no(lhs == rhs)});
    }
    rep.set("factors", cfg.spec.factor_orders());
    rep.set("seed", cfg.seed);
    rep.set("all_equal", all);
    rep.table = std::move(t);
  } else if (cmd == "coincidence") {
    std::vector<schreier::GroupSpec> specs;
    std::stringstream ss(o.specs.empty() ? std::string("2,3;0,0;2,2") : o.specs);
    std::string item;
    while (std::getline(ss, item, ';')) specs.push_back(parse_factors(item));
    auto rows = schreier::coincidence_report(specs, o.seed, o.index_cap);
    bool all = true;
    Table t{{"factors", "predicted_cost", "rank", "index", "measured_cost", "factor_sum", "match"}, {}};
    for (const auto& r : rows) {
      all = all && r.match;
      std::string f;
      for (auto m : r.spec.factor_orders()) f += (f.empty() ? "" : ",") + std::to_string(m);
      t.rows.push_back({f, str(r.predicted_cost), std::to_string(r.rank), std::to_string(r.index),
                        str(r.measured_cost), str(r.factor_sum), yes_no(r.match)});
    }
    rep.set("seed", o.seed);
    rep.set("all_match", all);
    rep.table = std::move(t);
  } else {
    throw UsageError("unknown command '" + cmd + "'");
  }
  return rep;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact costs of graphings, treeings, rotations and rank gradients", "costlab"};
  app.require_subcommand(1, 1);
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", o.seed, "Master seed (u64)");
  app.add_option("--edge-budget", o.edge_budget, "Edge-universe guard for brute-min");

  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"cost", "Cost of a graphing"},
      {"nu", "nu-measure of a graphing's edge set"},
      {"gen-check", "Does a graphing generate a relation"},
      {"treeing", "Is a graphing a treeing"},
      {"min-cost", "Cost of a relation (spanning treeing)"},
      {"reduce", "Restrict a graphing to a treeing"},
      {"single-gen", "One permutation generating a relation"},
      {"first-return", "First-return map of a permutation on a subset"},
      {"compress", "Both sides of the compression identity in the finite model"},
      {"brute-min", "Exhaustive minimum over generating edge subsets"},
      {"rotation-demo", "Restricted rotation family and jump paths"},
      {"eps-curve", "Cost against arc length"},
      {"invariants", "beta1, predicted cost and rank of a free product"},
      {"schreier-rank", "Rank of a sampled finite-index subgroup"},
      {"rank-gradient", "(rank - 1)/index over a list of indices"},
      {"compress-check", "Schreier formula check for sampled subgroups"},
      {"coincidence", "Predicted cost against measured rank gradient"},
  };
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    sub->fallthrough();
    sub->add_option("inputs", o.inputs, "Input files");
    const std::string name = s.name;
    if (name == "first-return") sub->add_option("--map", o.map_name, "Permutation to iterate");
    if (name == "first-return" || name == "compress") {
      sub->add_option("--subset", o.subset, "Comma-separated atoms");
      sub->add_option("--arc", o.arc, "start,len");
    }
    if (name == "rotation-demo") {
      sub->add_option("--points", o.points, "Sampled starting atoms");
      sub->add_option("--restricted", o.restricted, "Only check this restricted step");
    }
    if (name == "invariants" || name == "schreier-rank" || name == "rank-gradient" || name == "compress-check") {
      sub->add_option("--factors", o.factors, "Cyclic factor orders, 0 for Z (e.g. 2,3)");
    }
    if (name == "schreier-rank" || name == "compress-check") sub->add_option("--index", o.index, "Subgroup index");
    if (name == "schreier-rank" || name == "rank-gradient" || name == "compress-check") {
      sub->add_option("--indices", o.indices, "a,b,c or start:stop:step");
    }
    if (name == "rank-gradient") sub->add_option("--samples", o.samples, "Samples per index");
    if (name == "coincidence") {
      sub->add_option("--specs", o.specs, "Factor lists separated by ';' (e.g. \"2,3;0,0\")");
      sub->add_option("--index-cap", o.index_cap, "Largest index to sample");
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsageError;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    Report rep = dispatch(cmd, o);
    std::ostringstream buf;
    if (o.format == "json") {
      render_json(rep, buf);
    } else {
      render_text(rep, buf);
    }
    out << buf.str();
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
}

}  // namespace costlab::cli

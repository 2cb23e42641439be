// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "costlab/cli.hpp"
#include "costlab/rel_core.hpp"
#include "costlab/rotation.hpp"
#include "costlab/schreier.hpp"

using namespace costlab;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

Relation random_relation(std::mt19937_64& rng, std::size_t n, std::size_t max_classes) {
  std::uniform_int_distribution<std::size_t> pick(0, max_classes - 1);
  std::vector<std::size_t> labels(n);
  for (auto& l : labels) l = pick(rng);
  return Relation::from_labels(FiniteSpace(n), labels);
}

Graphing random_graphing(std::mt19937_64& rng, std::size_t n, std::size_t maps, double density) {
  std::bernoulli_distribution keep(density);
  std::vector<PartialMap> out;
  for (std::size_t j = 0; j < maps; ++j) {
    std::vector<Atom> targets(n);
    std::iota(targets.begin(), targets.end(), Atom{0});
    std::shuffle(targets.begin(), targets.end(), rng);
    std::vector<AtomPair> pairs;
    for (Atom x = 0; x < n; ++x) {
      if (keep(rng)) pairs.emplace_back(x, targets[x]);
    }
    out.emplace_back("m" + std::to_string(j), FiniteSpace(n), std::move(pairs));
  }
  return Graphing(FiniteSpace(n), std::move(out));
}

Subset random_subset(std::mt19937_64& rng, std::size_t n, double density) {
  std::bernoulli_distribution keep(density);
  std::vector<Atom> members;
  for (Atom x = 0; x < n; ++x) {
    if (keep(rng)) members.push_back(x);
  }
  if (members.empty()) members.push_back(rng() % n);
  return Subset(FiniteSpace(n), std::move(members));
}

std::size_t edge_universe(const Relation& r) {
  std::size_t total = 0;
  for (const auto& c : r.classes()) total += c.size() * (c.size() - 1) / 2;
  return total;
}

// 1. Epsilon-restricted rotation family.
Check rotation_family() {
  Check c;
  const std::size_t n = 1'000'000;
  rotation::RotationSystem sys(n, {{"a", 1}, {"b", 357913}});
  const rotation::Arc arc{0, rotation::arc_length_for(Rational(1, 1000), n)};
  c.require(arc.len == 1000, "arc length " + std::to_string(arc.len));
  auto g = rotation::epsilon_graphing(sys, "a", arc);
  c.require(rel::cost(g) == Rational(1001, 1000), "cost " + to_string(rel::cost(g)));
  c.require(rel::generates(g, rotation::expected_relation(sys)), "does not generate");

  std::mt19937_64 rng(1);
  std::vector<Atom> xs(1000);
  for (auto& x : xs) x = rng() % n;
  auto summary = rotation::verify_connection_paths(sys, "a", "b", arc, xs);
  c.require(summary.checked == 1000 && summary.failures == 0,
            std::to_string(summary.failures) + " of " + std::to_string(summary.checked) + " paths failed");
  // With a = +1 the first visit to [0, 1000) from x is after (n - x) mod n steps.
  for (std::size_t i = 0; i < xs.size() && c.ok; ++i) {
    auto path = rotation::connection_path(sys, "a", "b", arc, xs[i]);
    const std::uint64_t m = xs[i] < arc.len ? 0 : n - xs[i];
    c.require(path.hitting_time == m, "hitting time at " + std::to_string(xs[i]));
    c.require(path.length() == 2 * m + 1, "path length at " + std::to_string(xs[i]));
    if (i < 10) c.require(rotation::replay_path(g, path) == (xs[i] + 357913) % n, "replay at " + std::to_string(xs[i]));
  }
  c.detail = c.ok ? "cost 1001/1000, generates, 1000 paths verified (max length " +
                        std::to_string(summary.max_length) + ")"
                  : c.detail;
  return c;
}

// 2. Spanning treeings realize min_cost.
Check treeing_realization() {
  Check c;
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 1000 && c.ok; ++trial) {
    const std::size_t n = 1 + rng() % 10'000;
    auto r = random_relation(rng, n, 1 + rng() % n);
    auto t = rel::spanning_treeing(r);
    const auto mc = rel::min_cost(r);
    c.require(rel::cost(t) == mc, "spanning treeing cost, trial " + std::to_string(trial));
    c.require(mc == 1 - rel::transversal(r).measure(), "transversal identity, trial " + std::to_string(trial));
    c.require(rel::is_treeing(t), "not a treeing, trial " + std::to_string(trial));
    c.require(rel::generated_relation(t) == r, "wrong relation, trial " + std::to_string(trial));
  }
  int brute = 0;
  while (brute < 100 && c.ok) {
    const std::size_t n = 1 + rng() % 12;
    auto r = random_relation(rng, n, 1 + rng() % n);
    if (edge_universe(r) > 20) continue;
    c.require(rel::brute_force_min_cost(r) == rel::min_cost(r), "brute force disagrees, case " + std::to_string(brute));
    ++brute;
  }
  if (c.ok) c.detail = "1000 relations, 100 exhaustive checks";
  return c;
}

// 3. Reduction to a treeing keeps the relation.
Check reduction() {
  Check c;
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200 && c.ok; ++trial) {
    const std::size_t n = 1 + rng() % 2000;
    std::uniform_real_distribution<double> dens(0.05, 1.0);
    auto g = random_graphing(rng, n, 1 + rng() % 5, dens(rng));
    auto t = rel::reduce_to_treeing(g);
    auto r = rel::generated_relation(g);
    c.require(rel::is_treeing(t), "not a treeing, trial " + std::to_string(trial));
    c.require(rel::generated_relation(t) == r, "relation changed, trial " + std::to_string(trial));
    c.require(rel::cost(t) == rel::min_cost(r), "cost, trial " + std::to_string(trial));
  }
  if (c.ok) c.detail = "200 graphings";
  return c;
}

// 4. One permutation generates the relation.
Check single_generator() {
  Check c;
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100 && c.ok; ++trial) {
    const std::size_t n = 1 + rng() % 10'000;
    auto r = random_relation(rng, n, 1 + rng() % std::max<std::size_t>(1, n / 8));
    auto psi = rel::single_full_generator(r);
    c.require(psi.is_permutation(), "domain not full, trial " + std::to_string(trial));
    c.require(rel::cost(Graphing(FiniteSpace(n), {psi})) == 1, "cost, trial " + std::to_string(trial));
    c.require(rel::generated_relation(Graphing(FiniteSpace(n), {psi})) == r, "relation, trial " + std::to_string(trial));
    const auto fwd = psi.image_table();
    std::vector<Atom> inv(n);
    for (Atom x = 0; x < n; ++x) inv[fwd[x]] = x;
    const auto cls = r.classes();
    for (int q = 0; q < 100 && c.ok; ++q) {
      const auto& k = cls[rng() % cls.size()];
      const Atom x = k[rng() % k.size()];
      const Atom y = k[rng() % k.size()];
      const auto e = rel::orbit_exponent(psi, x, y);
      Atom z = x;
      for (std::int64_t s = 0; s < (e < 0 ? -e : e); ++s) z = e < 0 ? inv[z] : fwd[z];
      c.require(z == y, "orbit exponent " + std::to_string(x) + " -> " + std::to_string(y));
      c.require(static_cast<std::size_t>(e < 0 ? -e : e) * 2 <= k.size(), "exponent not minimal");
    }
  }
  if (c.ok) c.detail = "100 relations, 10000 exponent checks";
  return c;
}

// 5. First return on a cycle.
Check first_return() {
  Check c;
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100 && c.ok; ++trial) {
    const std::size_t n = 1 + rng() % 10'000;
    std::vector<Atom> order(n);
    std::iota(order.begin(), order.end(), Atom{0});
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<AtomPair> pairs;
    for (std::size_t i = 0; i < n; ++i) pairs.emplace_back(order[i], order[(i + 1) % n]);
    PartialMap psi("psi", FiniteSpace(n), std::move(pairs));
    std::uniform_real_distribution<double> dens(0.001, 1.0);
    auto a = random_subset(rng, n, dens(rng));
    auto fr = rel::first_return_map(psi, a);
    std::vector<Atom> sources, targets;
    for (auto [x, y] : fr.pairs()) {
      sources.push_back(x);
      targets.push_back(y);
    }
    std::sort(targets.begin(), targets.end());
    c.require(sources == a.members() && targets == a.members(), "not a bijection of a, trial " + std::to_string(trial));
    auto rt = rel::return_times(psi, a);
    const auto total = std::accumulate(rt.begin(), rt.end(), std::size_t{0});
    c.require(total == n, "sum of return times " + std::to_string(total) + " != " + std::to_string(n));
  }
  if (c.ok) c.detail = "100 cycles";
  return c;
}

// 6. Ranks of finite-index subgroups of free groups.
Check free_group_ranks() {
  Check c;
  std::mt19937_64 rng(6);
  for (std::size_t k = 2; k <= 4; ++k) {
    schreier::GroupSpec spec(std::vector<std::uint64_t>(k, 0));
    for (int trial = 0; trial < 50 && c.ok; ++trial) {
      const std::uint64_t i = 1 + rng() % 500;
      const std::uint64_t seed = rng();
      auto act = schreier::sample_free_action(spec, i, seed);
      const auto p = schreier::subgroup_rank(act);
      c.require(p == static_cast<std::int64_t>(1 + i * (k - 1)), "rank at index " + std::to_string(i));
      auto [lhs, rhs] = schreier::compression_check(spec, i, seed);
      c.require(lhs == rhs, "compression sides at index " + std::to_string(i));
    }
  }
  if (c.ok) c.detail = "150 actions";
  return c;
}

// 7. Z/2 * Z/3.
Check modular_group() {
  Check c;
  schreier::GroupSpec spec({2, 3});
  std::vector<std::uint64_t> indices;
  for (std::uint64_t i = 6; i <= 120; i += 6) indices.push_back(i);
  auto rows = schreier::rank_gradient(spec, indices, 7);
  c.require(rows.size() == 20, "row count");
  for (const auto& row : rows) {
    c.require(row.gradient == Rational(1, 6), "gradient at index " + std::to_string(row.index));
    c.require(1 + row.gradient == Rational(7, 6), "measured cost at index " + std::to_string(row.index));
  }
  // Factor costs straight from min_cost on relations with classes of size m.
  auto model = [](std::size_t m) {
    const std::size_t n = 10'000 / m * m;
    std::vector<std::size_t> labels(n);
    for (std::size_t x = 0; x < n; ++x) labels[x] = x / m;
    return rel::min_cost(Relation::from_labels(FiniteSpace(n), labels));
  };
  const auto c3 = model(3);
  const auto c2 = model(2);
  c.require(c3 == Rational(2, 3) && c2 == Rational(1, 2), "factor costs " + to_string(c3) + ", " + to_string(c2));
  auto report = schreier::coincidence_report({spec}, 7);
  c.require(report.size() == 1 && report[0].match, "coincidence row does not match");
  c.require(report[0].factor_sum == c2 + c3 && report[0].factor_sum == Rational(7, 6), "factor sum");
  c.require(report[0].measured_cost == Rational(7, 6) && report[0].predicted_cost == Rational(7, 6), "cost 7/6");
  if (c.ok) c.detail = "20 indices at 1/6; 7/6 = 2/3 + 1/2";
  return c;
}

// 8. Compression in the finite model.
Check compression() {
  Check c;
  std::mt19937_64 rng(8);
  int equal_cases = 0;
  for (int trial = 0; trial < 500 && c.ok; ++trial) {
    const std::size_t n = 1 + rng() % 500;
    auto r = random_relation(rng, n, 1 + rng() % n);
    std::vector<bool> in(n, false);
    for (const auto& k : r.classes()) in[k[rng() % k.size()]] = true;
    const bool full = trial % 10 == 0;
    std::bernoulli_distribution extra(0.5);
    std::vector<Atom> members;
    for (Atom x = 0; x < n; ++x) {
      if (full || in[x] || extra(rng)) members.push_back(x);
    }
    Subset a(FiniteSpace(n), members);
    auto [lhs, rhs] = rel::compression_sides(r, a);
    c.require(lhs <= rhs, "lhs > rhs, trial " + std::to_string(trial));
    c.require((lhs == rhs) == (a.size() == n), "equality mismatch, trial " + std::to_string(trial));
    equal_cases += lhs == rhs;
  }
  if (c.ok) c.detail = "500 pairs, " + std::to_string(equal_cases) + " with a = X";
  return c;
}

// 9. Repeated CLI runs agree byte for byte.
Check determinism() {
  Check c;
  namespace fs = std::filesystem;
  std::random_device rd;
  const fs::path dir = fs::temp_directory_path() / ("costlab-accept-" + std::to_string(rd()));
  fs::create_directories(dir);
  const auto rot = (dir / "rot.json").string();
  const auto eps = (dir / "eps.json").string();
  std::ofstream(rot) << R"({"n":1000000,"steps":{"a":1,"b":357913},"full":"a","eps":[0.1,0.01,0.001]})";
  std::ofstream(eps) << R"({"space":{"n":1000000},"maps":[{"name":"a","rotation":1,"domain":"all"},)"
                     << R"({"name":"b","rotation":357913,"domain":{"arc":[0,1000]}}]})";

  const std::vector<std::vector<std::string>> commands{
      {"--format", "json", "cost", eps},
      {"--format", "json", "reduce", eps},
      {"--seed", "11", "rotation-demo", "--points", "500", rot},
      {"--format", "json", "eps-curve", rot},
      {"--seed", "11", "--format", "json", "rank-gradient", "--factors", "2,3", "--indices", "6:120:6", "--samples", "3"},
      {"--seed", "11", "schreier-rank", "--factors", "0,0,0", "--indices", "1:50:7"},
      {"--seed", "11", "compress-check", "--factors", "2,3", "--indices", "6:60:6"},
      {"--seed", "11", "coincidence"},
  };
  const int saved = omp_get_max_threads();
  for (const auto& cmd : commands) {
    std::string first;
    for (int threads : {1, 2, 4, 1}) {
      omp_set_num_threads(threads);
      std::ostringstream out, err;
      const int code = cli::run(cmd, out, err);
      c.require(code == 0, "exit code " + std::to_string(code) + " for " + cmd[cmd.size() > 3 ? 3 : 0] + ": " + err.str());
      if (first.empty()) {
        first = out.str();
      } else {
        c.require(out.str() == first, "output differs with " + std::to_string(threads) + " threads");
      }
    }
  }
  omp_set_num_threads(saved);
  std::error_code ec;
  fs::remove_all(dir, ec);
  if (c.ok) c.detail = std::to_string(commands.size()) + " commands x 4 runs";
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0 means no time limit
    std::function<Check()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "restricted rotation family", 5, rotation_family},
      {2, "treeing realizes min cost", 60, treeing_realization},
      {3, "reduction to a treeing", 30, reduction},
      {4, "single generator", 0, single_generator},
      {5, "first return and return times", 0, first_return},
      {6, "free group subgroup ranks", 10, free_group_ranks},
      {7, "Z/2 * Z/3 rank gradient and factor costs", 0, modular_group},
      {8, "compression sides", 0, compression},
      {9, "CLI determinism", 0, determinism},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
      c = cr.run();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.ok && cr.limit_s > 0 && secs >= cr.limit_s) {
      c.ok = false;
      c.detail += " (over the time limit)";
    }
    std::printf("%s criterion %d: %s: %s [%.2fs%s]\n", c.ok ? "PASS" : "FAIL", cr.id, cr.name, c.detail.c_str(), secs,
                cr.limit_s > 0 ? (" / " + std::to_string(static_cast<int>(cr.limit_s)) + "s").c_str() : "");
    std::fflush(stdout);
    failed += !c.ok;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

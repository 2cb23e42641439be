#pragma once

// Random generators and independent reference computations for tests. The
// oracles here deliberately avoid the library's union-find and closed forms.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "costlab/space.hpp"

namespace costlab::testing {

inline Relation random_relation(std::mt19937_64& rng, std::size_t n, std::size_t max_classes) {
  std::uniform_int_distribution<std::size_t> pick(0, std::max<std::size_t>(1, max_classes) - 1);
  std::vector<std::size_t> labels(n);
  for (auto& l : labels) l = pick(rng);
  return Relation::from_labels(FiniteSpace(n), labels);
}

inline PartialMap random_partial_map(std::mt19937_64& rng, const std::string& name, std::size_t n,
                                     double density) {
  std::vector<Atom> targets(n);
  std::iota(targets.begin(), targets.end(), Atom{0});
  std::shuffle(targets.begin(), targets.end(), rng);
  std::bernoulli_distribution keep(density);
  std::vector<AtomPair> pairs;
  for (Atom x = 0; x < n; ++x) {
    if (keep(rng)) pairs.emplace_back(x, targets[x]);
  }
  return PartialMap(name, FiniteSpace(n), std::move(pairs));
}

inline Graphing random_graphing(std::mt19937_64& rng, std::size_t n, std::size_t maps, double density) {
  std::vector<PartialMap> out;
  for (std::size_t j = 0; j < maps; ++j) out.push_back(random_partial_map(rng, "m" + std::to_string(j), n, density));
  return Graphing(FiniteSpace(n), std::move(out));
}

inline PartialMap random_cycle(std::mt19937_64& rng, std::size_t n) {
  std::vector<Atom> order(n);
  std::iota(order.begin(), order.end(), Atom{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<AtomPair> pairs;
  for (std::size_t i = 0; i < n; ++i) pairs.emplace_back(order[i], order[(i + 1) % n]);
  return PartialMap("psi", FiniteSpace(n), std::move(pairs));
}

inline Subset random_subset(std::mt19937_64& rng, std::size_t n, double density, bool nonempty = true) {
  std::bernoulli_distribution keep(density);
  std::vector<Atom> members;
  for (Atom x = 0; x < n; ++x) {
    if (keep(rng)) members.push_back(x);
  }
  if (nonempty && members.empty()) members.push_back(rng() % n);
  return Subset(FiniteSpace(n), std::move(members));
}

/// Component labels (minimum atom) by breadth-first search.
inline std::vector<Atom> bfs_components(std::size_t n, const std::vector<AtomPair>& edges) {
  std::vector<std::vector<Atom>> adj(n);
  for (auto [x, y] : edges) {
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  std::vector<Atom> label(n, static_cast<Atom>(-1));
  for (Atom s = 0; s < n; ++s) {
    if (label[s] != static_cast<Atom>(-1)) continue;
    std::deque<Atom> queue{s};
    label[s] = s;
    while (!queue.empty()) {
      Atom u = queue.front();
      queue.pop_front();
      for (Atom v : adj[u]) {
        if (label[v] == static_cast<Atom>(-1)) {
          label[v] = s;
          queue.push_back(v);
        }
      }
    }
  }
  return label;
}

/// Cycle detection in an undirected multigraph by DFS over edge ids.
inline bool multigraph_has_cycle(std::size_t n, const std::vector<AtomPair>& edges) {
  std::vector<std::vector<std::pair<Atom, std::size_t>>> adj(n);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [x, y] = edges[e];
    if (x == y) return true;
    adj[x].push_back({y, e});
    adj[y].push_back({x, e});
  }
  std::vector<char> seen(n, 0);
  for (Atom s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::pair<Atom, std::size_t>> stack{{s, static_cast<std::size_t>(-1)}};
    while (!stack.empty()) {
      auto [u, via] = stack.back();
      stack.pop_back();
      if (seen[u]) return true;
      seen[u] = 1;
      for (auto [v, e] : adj[u]) {
        if (e != via) stack.push_back({v, e});
      }
    }
  }
  return false;
}

/// Least m >= 0 with x + m*step mod n in [start, start+len) by iteration.
inline std::optional<std::uint64_t> walk_hitting_time(std::size_t n, std::uint64_t step, Atom x, Atom start,
                                                      std::size_t len) {
  auto inside = [&](Atom z) { return (z + n - start) % n < len; };
  Atom z = x;
  for (std::uint64_t m = 0; m <= n; ++m) {
    if (inside(z)) return m;
    z = (z + step) % n;
  }
  return std::nullopt;
}

}  // namespace costlab::testing

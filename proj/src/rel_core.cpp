#include "costlab/rel_core.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "costlab/error.hpp"
#include "costlab/kernels.hpp"

namespace costlab::rel {

namespace {

struct Forest {
  std::vector<Atom> parent;

  explicit Forest(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), Atom{0}); }

  Atom find(Atom x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }

  bool unite(Atom a, Atom b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

void require_same_space(const FiniteSpace& a, const FiniteSpace& b, const char* what) {
  if (a != b) {
    throw Error(std::string(what) + ": spaces differ (" + std::to_string(a.size()) + " vs " +
                std::to_string(b.size()) + " atoms)");
  }
}

void require_permutation(const PartialMap& psi) {
  if (!psi.is_permutation()) {
    throw Error("map '" + psi.name() + "' is not a permutation (domain " + std::to_string(psi.domain_size()) +
                " of " + std::to_string(psi.space().size()) + " atoms)");
  }
}

}  // namespace

Rational cost(const Graphing& g) {
  std::size_t total = 0;
  for (const auto& m : g.maps()) total += m.domain_size();
  return g.space().measure(total);
}

EdgeSet to_edge_set(const Graphing& g) {
  return EdgeSet(g.space(), g.all_pairs());
}

Rational nu_measure(const EdgeSet& s) {
  return s.space().measure(s.edges().size());
}

Relation generated_relation(const Graphing& g) {
  auto pairs = g.all_pairs();
  auto labels = kernels::component_min_labels_parallel(g.space().size(), pairs);
  return Relation::from_labels(g.space(), labels);
}

Relation generated_relation(const EdgeSet& s) {
  auto labels = kernels::component_min_labels_parallel(s.space().size(), s.edges());
  return Relation::from_labels(s.space(), labels);
}

bool generates(const Graphing& g, const Relation& r) {
  require_same_space(g.space(), r.space(), "generates");
  return generated_relation(g) == r;
}

bool is_treeing(const Graphing& g) {
  // A multigraph is a forest iff |E| = |V| - #components.
  std::size_t edges = 0;
  for (const auto& m : g.maps()) edges += m.domain_size();
  const std::size_t n = g.space().size();
  if (edges >= n) return false;
  return edges == n - generated_relation(g).class_count();
}

Rational min_cost(const Relation& r) {
  return r.space().measure(r.space().size() - r.class_count());
}

Graphing spanning_treeing(const Relation& r) {
  std::vector<AtomPair> pairs;
  pairs.reserve(r.space().size() - r.class_count());
  for (const auto& cls : r.classes()) {
    for (std::size_t i = 1; i < cls.size(); ++i) pairs.emplace_back(cls[i], cls[i - 1]);
  }
  return Graphing(r.space(), {PartialMap("tree", r.space(), std::move(pairs))});
}

Graphing reduce_to_treeing(const Graphing& g) {
  const std::size_t n = g.space().size();
  const auto& maps = g.maps();
  std::vector<std::vector<Atom>> images;
  images.reserve(maps.size());
  for (const auto& m : maps) images.push_back(m.image_table());

  Forest forest(n);
  std::vector<std::vector<AtomPair>> kept(maps.size());
  for (Atom x = 0; x < n; ++x) {
    for (std::size_t j = 0; j < maps.size(); ++j) {
      Atom y = images[j][x];
      if (y != PartialMap::npos && forest.unite(x, y)) kept[j].emplace_back(x, y);
    }
  }

  std::vector<PartialMap> out;
  out.reserve(maps.size());
  for (std::size_t j = 0; j < maps.size(); ++j) {
    out.emplace_back(maps[j].name(), g.space(), std::move(kept[j]));
  }
  return Graphing(g.space(), std::move(out));
}

PartialMap single_full_generator(const Relation& r) {
  std::vector<AtomPair> pairs;
  pairs.reserve(r.space().size());
  for (const auto& cls : r.classes()) {
    for (std::size_t i = 0; i < cls.size(); ++i) pairs.emplace_back(cls[i], cls[(i + 1) % cls.size()]);
  }
  return PartialMap("psi", r.space(), std::move(pairs));
}

std::int64_t orbit_exponent(const PartialMap& psi, Atom x, Atom y) {
  require_permutation(psi);
  const std::size_t n = psi.space().size();
  if (x >= n || y >= n) throw Error("orbit_exponent: atom out of range");
  if (x == y) return 0;
  auto table = psi.image_table();
  std::size_t forward = 0;
  std::size_t found = 0;
  Atom z = x;
  do {
    z = table[z];
    ++forward;
    if (z == y && found == 0) found = forward;
  } while (z != x);
  if (found == 0) {
    throw Error("atoms " + std::to_string(x) + " and " + std::to_string(y) + " lie on different cycles of '" +
                psi.name() + "'");
  }
  const std::size_t cycle = forward;
  const std::size_t backward = cycle - found;
  if (found <= backward) return static_cast<std::int64_t>(found);
  return -static_cast<std::int64_t>(backward);
}

std::vector<std::size_t> return_times(const PartialMap& psi, const Subset& a) {
  require_permutation(psi);
  require_same_space(psi.space(), a.space(), "return_times");
  auto table = psi.image_table();
  auto in_a = a.mask();
  std::vector<std::size_t> times;
  times.reserve(a.size());
  for (Atom x : a.members()) {
    std::size_t k = 1;
    for (Atom z = table[x]; !in_a[z]; z = table[z]) ++k;
    times.push_back(k);
  }
  return times;
}

PartialMap first_return_map(const PartialMap& psi, const Subset& a) {
  require_permutation(psi);
  require_same_space(psi.space(), a.space(), "first_return_map");
  if (a.empty()) throw Error("first_return_map: empty subset");
  auto table = psi.image_table();
  auto in_a = a.mask();
  std::vector<AtomPair> pairs;
  pairs.reserve(a.size());
  for (Atom x : a.members()) {
    Atom z = table[x];
    while (!in_a[z]) z = table[z];
    pairs.emplace_back(x, z);
  }
  return PartialMap(psi.name() + "_A", psi.space(), std::move(pairs));
}

Graphing restrict_map(const Graphing& g, const std::string& map_name, const Subset& a) {
  require_same_space(g.space(), a.space(), "restrict_map");
  if (g.find(map_name) == nullptr) throw Error("unknown map '" + map_name + "'");
  auto in_a = a.mask();
  std::vector<PartialMap> maps;
  maps.reserve(g.maps().size());
  for (const auto& m : g.maps()) {
    if (m.name() != map_name) {
      maps.push_back(m);
      continue;
    }
    std::vector<AtomPair> pairs;
    for (auto p : m.pairs()) {
      if (in_a[p.first]) pairs.push_back(p);
    }
    maps.emplace_back(m.name(), g.space(), std::move(pairs));
  }
  return Graphing(g.space(), std::move(maps));
}

Relation restrict_relation(const Relation& r, const Subset& a) {
  require_same_space(r.space(), a.space(), "restrict_relation");
  if (a.empty()) throw Error("restrict_relation: empty subset");
  std::vector<std::size_t> labels;
  labels.reserve(a.size());
  for (Atom x : a.members()) labels.push_back(r.rep(x));
  return Relation::from_labels(FiniteSpace(a.size()), labels);
}

std::pair<Rational, Rational> compression_sides(const Relation& r, const Subset& a) {
  require_same_space(r.space(), a.space(), "compression_sides");
  std::vector<bool> met(r.space().size(), false);
  for (Atom x : a.members()) met[r.rep(x)] = true;
  for (Atom x = 0; x < met.size(); ++x) {
    if (r.rep(x) == x && !met[x]) {
      throw Error("subset misses the class of atom " + std::to_string(x));
    }
  }
  Rational lhs = min_cost(restrict_relation(r, a)) - 1;
  Rational rhs = a.measure() * (min_cost(r) - 1);
  return {lhs, rhs};
}

Subset transversal(const Relation& r) {
  std::vector<Atom> reps;
  reps.reserve(r.class_count());
  for (Atom x = 0; x < r.space().size(); ++x) {
    if (r.rep(x) == x) reps.push_back(x);
  }
  return Subset(r.space(), std::move(reps));
}

Rational brute_force_min_cost(const Relation& r, std::size_t edge_budget) {
  // Only atoms of non-singleton classes carry edges; relabel them densely.
  std::unordered_map<Atom, Atom> local;
  std::vector<AtomPair> universe;
  std::size_t nontrivial = 0;
  std::size_t universe_size = 0;
  const auto classes = r.classes();
  for (const auto& cls : classes) {
    if (cls.size() < 2) continue;
    ++nontrivial;
    universe_size += cls.size() * (cls.size() - 1) / 2;
    if (universe_size > edge_budget) {
      throw Error("edge universe exceeds the budget of " + std::to_string(edge_budget) + " edges");
    }
    for (Atom x : cls) local.emplace(x, local.size());
    for (std::size_t i = 0; i < cls.size(); ++i) {
      for (std::size_t j = i + 1; j < cls.size(); ++j) universe.emplace_back(local[cls[i]], local[cls[j]]);
    }
  }
  if (nontrivial == 0) return Rational(0);
  auto best = kernels::min_generating_subset_parallel(local.size(), universe, nontrivial);
  if (!best) throw Error("no generating subset found");  // unreachable: the universe generates
  return r.space().measure(*best);
}

}  // namespace costlab::rel

#pragma once

// Cost, generation, treeings, single generators and first-return maps on
// finite probability spaces.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "costlab/space.hpp"

namespace costlab::rel {

inline constexpr std::size_t kDefaultEdgeBudget = 20;

/// Sum of the domain measures of the maps, counting repeated maps again.
Rational cost(const Graphing& g);

/// All pairs of g as a set; duplicates collapse and loops are kept.
EdgeSet to_edge_set(const Graphing& g);
/// |edges| / n.
Rational nu_measure(const EdgeSet& s);

/// The smallest equivalence relation containing every (x, phi(x)).
Relation generated_relation(const Graphing& g);
Relation generated_relation(const EdgeSet& s);
bool generates(const Graphing& g, const Relation& r);

/// True iff the multigraph with one edge per (map, domain atom) is a forest.
/// Loops and parallel or inverse edges make it false.
bool is_treeing(const Graphing& g);

/// (n - c) / n for c classes: the cost realized by any spanning forest.
Rational min_cost(const Relation& r);

/// One map "tree" sending each class member to its predecessor in ascending
/// order, i.e. a path through the class rooted at its representative.
Graphing spanning_treeing(const Relation& r);

/// Restriction of g to a spanning forest of its own relation. Atoms are
/// scanned ascending, and for each atom the maps are taken in list order; a
/// pair survives iff it joins two components seen so far.
Graphing reduce_to_treeing(const Graphing& g);

/// A permutation of all atoms whose cycles are the classes (ascending).
PartialMap single_full_generator(const Relation& r);

/// Exponent k of smallest |k| (positive on ties) with psi^k(x) = y.
/// Throws Error if psi is not a permutation or x, y lie on different cycles.
std::int64_t orbit_exponent(const PartialMap& psi, Atom x, Atom y);

/// x -> psi^{r(x)}(x) on `a`, where r(x) >= 1 is the first return time.
PartialMap first_return_map(const PartialMap& psi, const Subset& a);
/// r(x) for each member of `a`, in member order.
std::vector<std::size_t> return_times(const PartialMap& psi, const Subset& a);

/// g with map `map_name` restricted to sources in `a`. Throws on unknown name.
Graphing restrict_map(const Graphing& g, const std::string& map_name, const Subset& a);

/// The trace of r on `a`, re-indexed ascending onto |a| atoms.
Relation restrict_relation(const Relation& r, const Subset& a);

/// (min_cost(r|a) - 1, mu(a) * (min_cost(r) - 1)). Throws Error unless `a`
/// meets every class. In the finite model lhs <= rhs with equality iff a = X.
std::pair<Rational, Rational> compression_sides(const Relation& r, const Subset& a);

/// Class representatives. min_cost(r) = 1 - measure(transversal(r)).
Subset transversal(const Relation& r);

/// Minimum nu-measure over all generating subsets of the within-class edge
/// universe {(x, y): x < y, same class}, by exhaustive search. Throws Error
/// when the universe holds more than `edge_budget` edges.
Rational brute_force_min_cost(const Relation& r, std::size_t edge_budget = kDefaultEdgeBudget);

}  // namespace costlab::rel

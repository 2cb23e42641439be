#include "costlab/schreier.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <random>

#include "costlab/error.hpp"
#include "costlab/rel_core.hpp"

namespace costlab::schreier {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Unbiased draw from [0, bound) by rejection; mt19937_64 output is fixed by
// the standard, so this is reproducible across platforms.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

void shuffle(std::vector<std::uint32_t>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(v[i - 1], v[j]);
  }
}

// Uniform among permutations of {0..n-1} whose cycles all have length m.
// m == 0 means no constraint. Consecutive blocks of a uniform shuffle become
// cycles; each target permutation arises from the same number of shuffles.
Permutation random_permutation(std::uint64_t n, std::uint64_t m, std::mt19937_64& rng) {
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  shuffle(order, rng);
  Permutation perm(n);
  if (m == 0) {
    for (std::uint64_t x = 0; x < n; ++x) perm[x] = order[x];
    return perm;
  }
  for (std::uint64_t b = 0; b < n; b += m) {
    for (std::uint64_t t = 0; t < m; ++t) perm[order[b + t]] = order[b + (t + 1) % m];
  }
  return perm;
}

std::size_t count_components(std::uint64_t n, const std::vector<Permutation>& perms) {
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = n;
  for (const auto& p : perms) {
    for (std::uint32_t x = 0; x < n; ++x) {
      auto a = find(x);
      auto b = find(p[x]);
      if (a != b) {
        parent[std::max(a, b)] = std::min(a, b);
        --components;
      }
    }
  }
  return components;
}

std::vector<std::uint64_t> cycle_lengths(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  std::vector<std::uint64_t> lengths;
  for (std::uint32_t x = 0; x < p.size(); ++x) {
    if (seen[x]) continue;
    std::uint64_t len = 0;
    for (std::uint32_t z = x; !seen[z]; z = p[z]) {
      seen[z] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  return lengths;
}

void check_index(const GroupSpec& spec, std::uint64_t index) {
  if (index == 0) throw Error("index must be at least 1");
  if (index > std::numeric_limits<std::uint32_t>::max()) throw Error("index too large");
  for (auto m : spec.factor_orders()) {
    if (m != 0 && index % m != 0) {
      throw Error("index " + std::to_string(index) + " is not divisible by factor order " + std::to_string(m));
    }
  }
}

template <class Fn>
void parallel_rows(std::size_t rows, Fn&& fn) {
  std::vector<std::exception_ptr> failures(rows);
  const auto count = static_cast<std::int64_t>(rows);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      failures[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
}

}  // namespace

GroupSpec::GroupSpec(std::vector<std::uint64_t> factor_orders) : orders_(std::move(factor_orders)) {
  if (orders_.empty()) throw Error("a group needs at least one cyclic factor");
  for (auto m : orders_) {
    if (m == 1) throw Error("trivial factor Z/1 is not allowed");
  }
}

std::uint64_t GroupSpec::index_step() const {
  std::uint64_t l = 1;
  for (auto m : orders_) {
    if (m != 0) l = std::lcm(l, m);
  }
  return l;
}

bool GroupSpec::admits_index(std::uint64_t index) const {
  return index >= 1 && index % index_step() == 0;
}

Rational factor_cost(std::uint64_t order) {
  if (order == 0) return Rational(1);
  return Rational(1) - Rational(1, static_cast<long long>(order));
}

GroupInvariants group_invariants(const GroupSpec& spec) {
  GroupInvariants inv;
  inv.rank = spec.factor_count();
  inv.predicted_cost = 0;
  for (auto m : spec.factor_orders()) {
    inv.factor_costs.push_back(factor_cost(m));
    inv.predicted_cost += inv.factor_costs.back();
  }
  inv.beta1 = inv.predicted_cost - 1;
  return inv;
}

bool PermAction::is_transitive() const {
  return count_components(index, perms) <= 1;
}

void PermAction::validate() const {
  check_index(spec, index);
  if (perms.size() != spec.factor_count()) {
    throw Error("expected " + std::to_string(spec.factor_count()) + " permutations, got " +
                std::to_string(perms.size()));
  }
  for (std::size_t j = 0; j < perms.size(); ++j) {
    const auto& p = perms[j];
    if (p.size() != index) throw Error("permutation " + std::to_string(j) + " has the wrong size");
    std::vector<bool> hit(index, false);
    for (auto y : p) {
      if (y >= index || hit[y]) throw Error("generator " + std::to_string(j) + " is not a permutation");
      hit[y] = true;
    }
    const auto m = spec.factor_orders()[j];
    if (m == 0) continue;
    for (auto len : cycle_lengths(p)) {
      if (len != m) {
        throw Error("generator " + std::to_string(j) + " of order " + std::to_string(m) + " has a cycle of length " +
                    std::to_string(len) + " (action not free at torsion)");
      }
    }
  }
  if (!is_transitive()) throw Error("action on " + std::to_string(index) + " cosets is not transitive");
}

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t factor, std::uint64_t attempt) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ (factor * 0xD6E8FEB86659FD93ULL + 1));
  h = splitmix64(h ^ (attempt * 0xC2B2AE3D27D4EB4FULL + 2));
  return h;
}

PermAction sample_free_action(const GroupSpec& spec, std::uint64_t index, std::uint64_t seed) {
  check_index(spec, index);
  PermAction act{spec, index, {}};
  for (std::uint64_t attempt = 0; attempt < kMaxSampleAttempts; ++attempt) {
    act.perms.clear();
    for (std::size_t j = 0; j < spec.factor_count(); ++j) {
      std::mt19937_64 rng(mix_seed(seed, j, attempt));
      act.perms.push_back(random_permutation(index, spec.factor_orders()[j], rng));
    }
    if (act.is_transitive()) return act;
  }
  throw Error("no transitive action on " + std::to_string(index) + " cosets after " +
              std::to_string(kMaxSampleAttempts) + " attempts");
}

std::int64_t rank_by_euler_characteristic(const GroupSpec& spec, std::uint64_t index) {
  check_index(spec, index);
  const auto i = static_cast<std::int64_t>(index);
  const auto k = static_cast<std::int64_t>(spec.factor_count());
  std::int64_t chi = i - k * i;
  for (auto m : spec.factor_orders()) {
    if (m != 0) chi += i / static_cast<std::int64_t>(m);
  }
  return 1 - chi;
}

std::int64_t rank_by_cycle_rank(const PermAction& act) {
  if (!act.is_transitive()) throw Error("Schreier graph is disconnected (action not transitive)");
  // Each torsion cycle contracts to a path (len - 1 edges); a Z generator
  // contributes one edge per coset.
  std::int64_t edges = 0;
  for (std::size_t j = 0; j < act.perms.size(); ++j) {
    if (act.spec.factor_orders()[j] == 0) {
      edges += static_cast<std::int64_t>(act.index);
    } else {
      for (auto len : cycle_lengths(act.perms[j])) edges += static_cast<std::int64_t>(len) - 1;
    }
  }
  return edges - static_cast<std::int64_t>(act.index) + 1;
}

std::int64_t subgroup_rank(const PermAction& act) {
  act.validate();
  const auto by_chi = rank_by_euler_characteristic(act.spec, act.index);
  const auto by_graph = rank_by_cycle_rank(act);
  if (by_chi != by_graph) {
    throw Error("rank computations disagree: Euler characteristic gives " + std::to_string(by_chi) +
                ", Schreier graph gives " + std::to_string(by_graph));
  }
  return by_chi;
}

std::vector<GradientRow> rank_gradient(const GroupSpec& spec, const std::vector<std::uint64_t>& indices,
                                       std::uint64_t seed, std::size_t samples) {
  if (samples == 0) throw Error("samples must be at least 1");
  for (auto i : indices) check_index(spec, i);
  const Rational beta1 = group_invariants(spec).beta1;
  std::vector<GradientRow> rows(indices.size());
  parallel_rows(rows.size(), [&](std::size_t r) {
    auto& row = rows[r];
    row.index = indices[r];
    row.beta1 = beta1;
    bool same_rank = true;
    for (std::size_t s = 0; s < samples; ++s) {
      const std::uint64_t sample_seed = s == 0 ? seed : mix_seed(seed, ~std::uint64_t{0}, s);
      const auto p = subgroup_rank(sample_free_action(spec, row.index, sample_seed));
      if (s == 0) {
        row.rank = p;
      } else if (p != row.rank) {
        same_rank = false;
      }
    }
    row.gradient = Rational(row.rank - 1, static_cast<long long>(row.index));
    row.match = same_rank && row.gradient == beta1;
  });
  return rows;
}

std::pair<Rational, Rational> compression_check(const GroupSpec& spec, std::uint64_t index, std::uint64_t seed) {
  const auto p = subgroup_rank(sample_free_action(spec, index, seed));
  return {Rational(p - 1), Rational(static_cast<long long>(index)) * group_invariants(spec).beta1};
}

Rational finite_factor_cost_model(std::uint64_t order, std::size_t atoms) {
  if (order < 2) throw Error("finite factor model needs order >= 2");
  const std::size_t blocks = std::max<std::size_t>(1, atoms / order);
  const std::size_t n = blocks * order;
  std::vector<std::size_t> labels(n);
  for (std::size_t x = 0; x < n; ++x) labels[x] = x / order;
  return rel::min_cost(Relation::from_labels(FiniteSpace(n), labels));
}

std::vector<CoincidenceRow> coincidence_report(const std::vector<GroupSpec>& specs, std::uint64_t seed,
                                               std::uint64_t index_cap) {
  std::vector<CoincidenceRow> rows;
  rows.reserve(specs.size());
  for (const auto& spec : specs) rows.push_back(CoincidenceRow{spec, 0, 0, 0, 0, {}, 0, false});
  parallel_rows(rows.size(), [&](std::size_t r) {
    auto& row = rows[r];
    const auto inv = group_invariants(row.spec);
    row.predicted_cost = inv.predicted_cost;
    row.rank = inv.rank;
    const std::uint64_t step = row.spec.index_step();
    row.index = step * std::max<std::uint64_t>(1, index_cap / step);
    const auto p = subgroup_rank(sample_free_action(row.spec, row.index, seed));
    row.measured_cost = 1 + Rational(p - 1, static_cast<long long>(row.index));
    row.factor_sum = 0;
    for (auto m : row.spec.factor_orders()) {
      row.factor_costs.push_back(m == 0 ? Rational(1) : finite_factor_cost_model(m));
      row.factor_sum += row.factor_costs.back();
    }
    row.match = row.measured_cost == row.predicted_cost && row.factor_sum == row.predicted_cost;
  });
  return rows;
}

}  // namespace costlab::schreier

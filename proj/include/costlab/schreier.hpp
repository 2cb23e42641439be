#pragma once

// Free products of cyclic groups, their transitive permutation actions on
// cosets, and subgroup ranks read off the Schreier graph.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "costlab/rational.hpp"

namespace costlab::schreier {

using Permutation = std::vector<std::uint32_t>;

/// Z/m_1 * ... * Z/m_k; an order of 0 stands for an infinite cyclic factor.
class GroupSpec {
 public:
  explicit GroupSpec(std::vector<std::uint64_t> factor_orders);  // throws Error

  const std::vector<std::uint64_t>& factor_orders() const { return orders_; }
  std::size_t factor_count() const { return orders_.size(); }
  /// lcm of the finite orders (1 if there are none).
  std::uint64_t index_step() const;
  bool admits_index(std::uint64_t index) const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

 private:
  std::vector<std::uint64_t> orders_;
};

/// Cost of a free action of one cyclic factor: 1 - 1/m, or 1 for Z.
Rational factor_cost(std::uint64_t order);

struct GroupInvariants {
  Rational beta1;
  Rational predicted_cost;
  std::size_t rank = 0;
  std::vector<Rational> factor_costs;
};

GroupInvariants group_invariants(const GroupSpec& spec);

/// One permutation of {0, ..., index-1} per factor.
struct PermAction {
  GroupSpec spec;
  std::uint64_t index = 0;
  std::vector<Permutation> perms;

  /// Throws Error unless every torsion generator has all cycles of length
  /// exactly its order and the generated group is transitive.
  void validate() const;
  bool is_transitive() const;
};

/// 64-bit mixer used to derive per-(factor, attempt) streams from a seed.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t factor, std::uint64_t attempt);

inline constexpr std::uint64_t kMaxSampleAttempts = 10'000;

/// Uniform permutations (all cycles of length m for a Z/m factor) resampled
/// until transitive. Deterministic in (spec, index, seed).
PermAction sample_free_action(const GroupSpec& spec, std::uint64_t index, std::uint64_t seed);

/// Rank from the Euler characteristic: 1 - (i - k i + sum i/m_j).
std::int64_t rank_by_euler_characteristic(const GroupSpec& spec, std::uint64_t index);
/// Rank as the cycle rank E - V + 1 of the contracted Schreier graph.
std::int64_t rank_by_cycle_rank(const PermAction& act);
/// Both of the above; throws Error if they disagree or the input is invalid.
std::int64_t subgroup_rank(const PermAction& act);

struct GradientRow {
  std::uint64_t index = 0;
  std::int64_t rank = 0;
  Rational gradient;  // (rank - 1) / index
  Rational beta1;
  bool match = false;
};

/// One sampled action per index (more when samples > 1; every sample must
/// give the same rank for `match`). Rows are computed in parallel and kept
/// in input order.
std::vector<GradientRow> rank_gradient(const GroupSpec& spec, const std::vector<std::uint64_t>& indices,
                                       std::uint64_t seed, std::size_t samples = 1);

/// (rank - 1, index * beta1) for a sampled action.
std::pair<Rational, Rational> compression_check(const GroupSpec& spec, std::uint64_t index,
                                                std::uint64_t seed);

struct CoincidenceRow {
  GroupSpec spec;
  Rational predicted_cost;
  std::size_t rank = 0;
  std::uint64_t index = 0;
  Rational measured_cost;  // 1 + (p - 1)/index
  /// Factor costs; finite factors come from the finite relation model.
  std::vector<Rational> factor_costs;
  Rational factor_sum;
  bool match = false;
};

inline constexpr std::uint64_t kDefaultIndexCap = 120;
inline constexpr std::size_t kFactorModelAtoms = 10'000;

/// For each spec: predicted cost, rank, measured cost at the largest multiple
/// of index_step() not above `index_cap`, and the factor-cost sum.
std::vector<CoincidenceRow> coincidence_report(const std::vector<GroupSpec>& specs, std::uint64_t seed,
                                               std::uint64_t index_cap = kDefaultIndexCap);

/// min_cost of m-sized classes on the largest multiple of m <= atoms.
Rational finite_factor_cost_model(std::uint64_t order, std::size_t atoms = kFactorModelAtoms);

}  // namespace costlab::schreier

#include "costlab/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>

#include "costlab/error.hpp"

namespace costlab::kernels {

namespace {

// Union by smaller index: a root only ever points at a smaller atom, so the
// surviving root of each component is its minimum.
struct SerialForest {
  std::vector<Atom> parent;

  explicit SerialForest(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), Atom{0}); }

  Atom find(Atom x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  bool unite(Atom a, Atom b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a < b) std::swap(a, b);
    parent[a] = b;
    return true;
  }
};

Atom concurrent_find(std::vector<Atom>& parent, Atom x) {
  for (;;) {
    std::atomic_ref<Atom> px(parent[x]);
    Atom p = px.load(std::memory_order_acquire);
    if (p == x) return x;
    Atom gp = std::atomic_ref<Atom>(parent[p]).load(std::memory_order_acquire);
    if (gp != p) {
      // Halving: gp is an ancestor of x, so the link stays valid.
      px.compare_exchange_weak(p, gp, std::memory_order_acq_rel);
    }
    x = gp;
  }
}

void concurrent_unite(std::vector<Atom>& parent, Atom a, Atom b) {
  for (;;) {
    a = concurrent_find(parent, a);
    b = concurrent_find(parent, b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    Atom expected = a;
    if (std::atomic_ref<Atom>(parent[a]).compare_exchange_strong(expected, b, std::memory_order_acq_rel)) {
      return;
    }
  }
}

void check_edges(std::size_t n, std::span<const AtomPair> edges) {
  for (auto [x, y] : edges) {
    if (x >= n || y >= n) throw Error("edge endpoint out of range");
  }
}

bool mask_generates(std::size_t n, std::span<const AtomPair> universe, std::uint64_t mask,
                    std::size_t needed_unions, std::vector<std::uint8_t>& parent) {
  for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint8_t>(i);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t unions = 0;
  for (std::uint64_t m = mask; m != 0; m &= m - 1) {
    const auto& [x, y] = universe[static_cast<std::size_t>(std::countr_zero(m))];
    auto a = find(x);
    auto b = find(y);
    if (a != b) {
      parent[std::max(a, b)] = static_cast<std::uint8_t>(std::min(a, b));
      ++unions;
    }
  }
  return unions == needed_unions;
}

void check_brute_force_input(std::size_t n, std::span<const AtomPair> universe, std::size_t target) {
  if (universe.size() >= 63) throw Error("edge universe too large for exhaustive search");
  if (n > 255) throw Error("exhaustive search supports at most 255 atoms");
  if (target == 0 || target > n) throw Error("target component count out of range");
  check_edges(n, universe);
}

}  // namespace

std::vector<Atom> component_min_labels_serial(std::size_t n, std::span<const AtomPair> edges) {
  check_edges(n, edges);
  SerialForest forest(n);
  for (auto [x, y] : edges) forest.unite(x, y);
  std::vector<Atom> labels(n);
  for (Atom x = 0; x < n; ++x) labels[x] = forest.find(x);
  return labels;
}

std::vector<Atom> component_min_labels_parallel(std::size_t n, std::span<const AtomPair> edges) {
  check_edges(n, edges);
  std::vector<Atom> parent(n);
  const auto count = static_cast<std::int64_t>(n);
  const auto edge_count = static_cast<std::int64_t>(edges.size());

#pragma omp parallel
  {
#pragma omp for schedule(static)
    for (std::int64_t x = 0; x < count; ++x) parent[x] = static_cast<Atom>(x);

#pragma omp for schedule(dynamic, 4096)
    for (std::int64_t e = 0; e < edge_count; ++e) {
      concurrent_unite(parent, edges[e].first, edges[e].second);
    }

    // After the barrier the forest is final; flatten it. Another thread may
    // flatten a shared ancestor concurrently, which leaves its root intact.
#pragma omp for schedule(static)
    for (std::int64_t x = 0; x < count; ++x) {
      Atom root = concurrent_find(parent, static_cast<Atom>(x));
      std::atomic_ref<Atom>(parent[x]).store(root, std::memory_order_relaxed);
    }
  }
  return parent;
}

std::optional<std::size_t> min_generating_subset_serial(std::size_t n, std::span<const AtomPair> universe,
                                                        std::size_t target_components) {
  check_brute_force_input(n, universe, target_components);
  const std::size_t needed = n - target_components;
  const std::uint64_t subsets = std::uint64_t{1} << universe.size();
  std::vector<std::uint8_t> parent(n);
  std::optional<std::size_t> best;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    auto size = static_cast<std::size_t>(std::popcount(mask));
    if (best && size >= *best) continue;
    if (mask_generates(n, universe, mask, needed, parent)) best = size;
  }
  return best;
}

std::optional<std::size_t> min_generating_subset_parallel(std::size_t n, std::span<const AtomPair> universe,
                                                          std::size_t target_components) {
  check_brute_force_input(n, universe, target_components);
  const std::size_t needed = n - target_components;
  const auto subsets = static_cast<std::int64_t>(std::uint64_t{1} << universe.size());
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::size_t best = none;

#pragma omp parallel reduction(min : best)
  {
    std::vector<std::uint8_t> parent(n);
#pragma omp for schedule(static, 1024)
    for (std::int64_t mask = 0; mask < subsets; ++mask) {
      auto size = static_cast<std::size_t>(std::popcount(static_cast<std::uint64_t>(mask)));
      if (size >= best) continue;
      if (mask_generates(n, universe, static_cast<std::uint64_t>(mask), needed, parent)) best = size;
    }
  }
  if (best == none) return std::nullopt;
  return best;
}

}  // namespace costlab::kernels

#pragma once

// Data-parallel kernels. Each kernel has an OpenMP implementation used by the
// library and a serial reference kept for tests and benchmarks; both return
// identical results for every thread count.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "costlab/space.hpp"

namespace costlab::kernels {

/// Component label of every atom in the undirected graph on `n` atoms with
/// the given edges; the label is the minimum atom of the component.
std::vector<Atom> component_min_labels_serial(std::size_t n, std::span<const AtomPair> edges);
std::vector<Atom> component_min_labels_parallel(std::size_t n, std::span<const AtomPair> edges);

/// Smallest number of edges from `universe` (on `n` atoms) whose components
/// have exactly `target_components` classes; nullopt when no subset does.
/// Enumerates all 2^|universe| subsets, so |universe| must be small (< 63).
std::optional<std::size_t> min_generating_subset_serial(std::size_t n,
                                                        std::span<const AtomPair> universe,
                                                        std::size_t target_components);
std::optional<std::size_t> min_generating_subset_parallel(std::size_t n,
                                                          std::span<const AtomPair> universe,
                                                          std::size_t target_components);

}  // namespace costlab::kernels

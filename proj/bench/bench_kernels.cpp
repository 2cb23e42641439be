// Serial reference kernels against their OpenMP counterparts.
//
//   ./build/bench_kernels
//   OMP_NUM_THREADS=8 ./build/bench_kernels --benchmark_filter=Components

#include <benchmark/benchmark.h>

#include <random>

#include "costlab/kernels.hpp"
#include "costlab/rotation.hpp"
#include "costlab/schreier.hpp"

namespace {

using costlab::AtomPair;

// Rotation +1 on the full space plus +q on a short arc: the restricted
// family at n atoms.
std::vector<AtomPair> epsilon_edges(std::size_t n) {
  costlab::rotation::RotationSystem sys(n, {{"a", 1}, {"b", 357913}});
  auto g = costlab::rotation::epsilon_graphing(sys, "a", {0, n / 1000 + 1});
  return g.all_pairs();
}

std::vector<AtomPair> random_edges(std::size_t n, std::size_t m) {
  std::mt19937_64 rng(7);
  std::vector<AtomPair> edges(m);
  for (auto& e : edges) e = {rng() % n, rng() % n};
  return edges;
}

void BM_ComponentsSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto edges = epsilon_edges(n);
  for (auto _ : state) benchmark::DoNotOptimize(costlab::kernels::component_min_labels_serial(n, edges));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(edges.size()));
}

void BM_ComponentsParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto edges = epsilon_edges(n);
  for (auto _ : state) benchmark::DoNotOptimize(costlab::kernels::component_min_labels_parallel(n, edges));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(edges.size()));
}

void BM_RandomComponentsSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto edges = random_edges(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(costlab::kernels::component_min_labels_serial(n, edges));
}

void BM_RandomComponentsParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto edges = random_edges(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(costlab::kernels::component_min_labels_parallel(n, edges));
}

// Complete graph on k atoms: k(k-1)/2 edges, one target component.
std::vector<AtomPair> complete_universe(std::size_t atoms) {
  std::vector<AtomPair> u;
  for (std::size_t i = 0; i < atoms; ++i) {
    for (std::size_t j = i + 1; j < atoms; ++j) u.emplace_back(i, j);
  }
  return u;
}

void BM_BruteForceSerial(benchmark::State& state) {
  const auto atoms = static_cast<std::size_t>(state.range(0));
  const auto u = complete_universe(atoms);
  for (auto _ : state) benchmark::DoNotOptimize(costlab::kernels::min_generating_subset_serial(atoms, u, 1));
}

void BM_BruteForceParallel(benchmark::State& state) {
  const auto atoms = static_cast<std::size_t>(state.range(0));
  const auto u = complete_universe(atoms);
  for (auto _ : state) benchmark::DoNotOptimize(costlab::kernels::min_generating_subset_parallel(atoms, u, 1));
}

void BM_RankGradient(benchmark::State& state) {
  costlab::schreier::GroupSpec spec({2, 3});
  std::vector<std::uint64_t> indices;
  for (std::uint64_t i = 6; i <= 120; i += 6) indices.push_back(i);
  for (auto _ : state) benchmark::DoNotOptimize(costlab::schreier::rank_gradient(spec, indices, 1));
}

}  // namespace

BENCHMARK(BM_ComponentsSerial)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ComponentsParallel)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RandomComponentsSerial)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RandomComponentsParallel)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceSerial)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceParallel)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RankGradient)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

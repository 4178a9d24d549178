#include <benchmark/benchmark.h>

#include <vector>

#include "benchsel/design.hpp"
#include "benchsel/graph_select.hpp"
#include "benchsel/rng.hpp"
#include "benchsel/similarity.hpp"

namespace {

benchsel::SimilarityGraph random_graph(std::size_t n, double density,
                                       std::uint64_t seed) {
  benchsel::Rng rng(seed);
  std::vector<benchsel::InstanceKey> nodes;
  for (std::size_t i = 0; i < n; ++i)
    nodes.push_back(benchsel::InstanceKey{"B", static_cast<int>(i) + 1, 1, 10});
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.uniform() < density) edges.emplace_back(i, j);
  return benchsel::SimilarityGraph(std::move(nodes), std::move(edges), 0.9);
}

void BM_DominatingSet(benchmark::State& state) {
  const auto graph =
      random_graph(static_cast<std::size_t>(state.range(0)), 0.85, 5);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(benchsel::dominating_set(graph, ++seed));
  }
}
BENCHMARK(BM_DominatingSet)->Arg(222)->Arg(512);

void BM_MaximalIndependentSet(benchmark::State& state) {
  const auto graph =
      random_graph(static_cast<std::size_t>(state.range(0)), 0.85, 5);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        benchsel::maximal_independent_set(graph, ++seed));
  }
}
BENCHMARK(BM_MaximalIndependentSet)->Arg(222)->Arg(512);

void BM_ImprovedLhs(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const benchsel::Bounds bounds(10, {-5.0, 5.0});
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(benchsel::improved_lhs(n, 10, bounds, ++seed));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ImprovedLhs)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

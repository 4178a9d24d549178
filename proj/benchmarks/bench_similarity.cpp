#include <benchmark/benchmark.h>

#include <vector>

#include "benchsel/clustering.hpp"
#include "benchsel/rng.hpp"
#include "benchsel/similarity.hpp"

namespace {

benchsel::FeatureTable random_table(std::size_t rows, std::size_t cols,
                                    std::uint64_t seed) {
  benchsel::Rng rng(seed);
  std::vector<benchsel::InstanceKey> keys;
  std::vector<std::string> names;
  std::vector<double> values;
  for (std::size_t j = 0; j < cols; ++j)
    names.push_back("f" + std::to_string(j));
  for (std::size_t i = 0; i < rows; ++i) {
    keys.push_back(
        benchsel::InstanceKey{"B", static_cast<int>(i) + 1, 1, 10});
    for (std::size_t j = 0; j < cols; ++j)
      values.push_back(rng.uniform(0.05, 1.0));
  }
  return benchsel::FeatureTable(keys, names, values);
}

void BM_BuildGraph(benchmark::State& state) {
  const auto table = random_table(static_cast<std::size_t>(state.range(0)), 63, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(benchsel::build_graph(table, 0.9));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildGraph)->RangeMultiplier(2)->Range(32, 512)->Complexity();

void BM_AgglomerativeCluster(benchmark::State& state) {
  const auto table = random_table(static_cast<std::size_t>(state.range(0)), 45, 9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(benchsel::agglomerative_cluster(table, 12));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AgglomerativeCluster)->RangeMultiplier(2)->Range(32, 256)->Complexity();

void BM_SilhouetteSweep(benchmark::State& state) {
  const auto table = random_table(128, 45, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(benchsel::choose_k(table, 2, 12, 2));
  }
}
BENCHMARK(BM_SilhouetteSweep)->Unit(benchmark::kMillisecond);

}  // namespace

#include <benchmark/benchmark.h>

#include <vector>

#include "benchsel/rng.hpp"
#include "benchsel/stats.hpp"

namespace {

void BM_StudentizedRangeSf(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  double q = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(benchsel::stats::studentized_range_sf(q, k));
    q = q >= 6.0 ? 0.5 : q + 0.25;  // sweep the useful argument range
  }
}
BENCHMARK(BM_StudentizedRangeSf)->Arg(2)->Arg(3)->Arg(5)->Arg(10);

void BM_ChiSquareSf(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(benchsel::stats::chi_square_sf(x, 2.0));
    x = x >= 40.0 ? 0.1 : x + 0.37;
  }
}
BENCHMARK(BM_ChiSquareSf);

void BM_KsTwoSample(benchmark::State& state) {
  benchsel::Rng rng(3);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> a(n), b(n);
  for (double& v : a) v = rng.normal();
  for (double& v : b) v = rng.normal();
  for (auto _ : state) {
    benchmark::DoNotOptimize(benchsel::stats::ks_two_sample(a, b));
  }
}
BENCHMARK(BM_KsTwoSample)->Arg(30)->Arg(100)->Arg(1000);

}  // namespace

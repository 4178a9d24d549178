#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "benchsel/instance_key.hpp"
#include "benchsel/similarity.hpp"

namespace benchsel {

enum class Heuristic { kDominatingSet, kMaximalIndependentSet };

std::string heuristic_name(Heuristic h);

/// One stochastic selection: the node subset chosen by a heuristic on a
/// similarity graph under one seed. Selections are verified (domination /
/// independence + maximality) before being returned.
struct SelectionRun {
  Heuristic heuristic = Heuristic::kDominatingSet;
  double threshold = 1.0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> selected;      // node indices, ascending
  std::vector<InstanceKey> selected_keys; // aligned with `selected`
};

/// Greedy max-coverage dominating set: repeatedly add the node whose closed
/// neighborhood covers the most currently-undominated nodes, ties broken
/// uniformly at random under the seed.
SelectionRun dominating_set(const SimilarityGraph& graph, std::uint64_t seed);

/// Random-permutation greedy maximal independent set: visit nodes in a
/// seed-shuffled order, adding each whose neighbors are all unselected.
SelectionRun maximal_independent_set(const SimilarityGraph& graph,
                                     std::uint64_t seed);

/// Exhaustive O(|V| + |E|) safety checks.
bool verify_dominating(const SimilarityGraph& graph,
                       const std::vector<std::size_t>& selected);
bool verify_independent_maximal(const SimilarityGraph& graph,
                                const std::vector<std::size_t>& selected);

struct BatchResult {
  std::vector<SelectionRun> runs;
  std::size_t min_size = 0;
  std::size_t max_size = 0;
  double mean_size = 0.0;
};

/// Independent per-seed runs plus size statistics over |selected|.
BatchResult run_batch(const SimilarityGraph& graph, Heuristic heuristic,
                      const std::vector<std::uint64_t>& seeds);

}  // namespace benchsel

#include "benchsel/graph_select.hpp"

#include <algorithm>

#include "benchsel/error.hpp"
#include "benchsel/parallel.hpp"
#include "benchsel/rng.hpp"

namespace benchsel {

namespace {

void attach_keys(const SimilarityGraph& graph, SelectionRun& run) {
  std::sort(run.selected.begin(), run.selected.end());
  run.selected_keys.reserve(run.selected.size());
  for (const std::size_t i : run.selected)
    run.selected_keys.push_back(graph.nodes()[i]);
}

}  // namespace

std::string heuristic_name(Heuristic h) {
  return h == Heuristic::kDominatingSet ? "ds" : "mis";
}

SelectionRun dominating_set(const SimilarityGraph& graph, std::uint64_t seed) {
  const std::size_t n = graph.node_count();
  if (n == 0) throw DomainError("dominating_set: empty graph");

  Rng rng(seed);
  std::vector<bool> dominated(n, false);
  std::vector<bool> selected(n, false);
  std::size_t remaining = n;

  SelectionRun run{Heuristic::kDominatingSet, graph.threshold(), seed, {}, {}};
  while (remaining > 0) {
    std::size_t best_gain = 0;
    std::vector<std::size_t> best_nodes;
    for (std::size_t v = 0; v < n; ++v) {
      if (selected[v]) continue;
      std::size_t gain = dominated[v] ? 0 : 1;
      for (const std::size_t u : graph.neighbors(v))
        if (!dominated[u]) ++gain;
      if (gain > best_gain) {
        best_gain = gain;
        best_nodes.assign(1, v);
      } else if (gain == best_gain && gain > 0) {
        best_nodes.push_back(v);
      }
    }
    const std::size_t pick =
        best_nodes[static_cast<std::size_t>(rng.below(best_nodes.size()))];
    selected[pick] = true;
    run.selected.push_back(pick);
    if (!dominated[pick]) {
      dominated[pick] = true;
      --remaining;
    }
    for (const std::size_t u : graph.neighbors(pick)) {
      if (!dominated[u]) {
        dominated[u] = true;
        --remaining;
      }
    }
  }

  attach_keys(graph, run);
  if (!verify_dominating(graph, run.selected))
    throw IntegrityError("dominating_set: produced a non-dominating set");
  return run;
}

SelectionRun maximal_independent_set(const SimilarityGraph& graph,
                                     std::uint64_t seed) {
  const std::size_t n = graph.node_count();
  if (n == 0) throw DomainError("maximal_independent_set: empty graph");

  Rng rng(seed);
  const auto order = random_permutation(n, rng);
  std::vector<bool> selected(n, false);

  SelectionRun run{Heuristic::kMaximalIndependentSet, graph.threshold(), seed,
                   {}, {}};
  for (const std::size_t v : order) {
    bool blocked = false;
    for (const std::size_t u : graph.neighbors(v)) {
      if (selected[u]) {
        blocked = true;
        break;
      }
    }
    if (!blocked) {
      selected[v] = true;
      run.selected.push_back(v);
    }
  }

  attach_keys(graph, run);
  if (!verify_independent_maximal(graph, run.selected))
    throw IntegrityError(
        "maximal_independent_set: produced a non-maximal or dependent set");
  return run;
}

bool verify_dominating(const SimilarityGraph& graph,
                       const std::vector<std::size_t>& selected) {
  std::vector<bool> in_set(graph.node_count(), false);
  for (const std::size_t v : selected) in_set[v] = true;
  for (std::size_t v = 0; v < graph.node_count(); ++v) {
    if (in_set[v]) continue;
    bool covered = false;
    for (const std::size_t u : graph.neighbors(v)) {
      if (in_set[u]) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

bool verify_independent_maximal(const SimilarityGraph& graph,
                                const std::vector<std::size_t>& selected) {
  std::vector<bool> in_set(graph.node_count(), false);
  for (const std::size_t v : selected) in_set[v] = true;
  for (const std::size_t v : selected)
    for (const std::size_t u : graph.neighbors(v))
      if (in_set[u]) return false;  // independence
  // Maximality: no outside node may have an all-unselected neighborhood.
  return verify_dominating(graph, selected);
}

BatchResult run_batch(const SimilarityGraph& graph, Heuristic heuristic,
                      const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) throw DomainError("run_batch: needs at least one seed");

  BatchResult result;
  result.runs.resize(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) {
    result.runs[i] = heuristic == Heuristic::kDominatingSet
                         ? dominating_set(graph, seeds[i])
                         : maximal_independent_set(graph, seeds[i]);
  });

  result.min_size = result.runs.front().selected.size();
  result.max_size = result.min_size;
  double total = 0.0;
  for (const auto& run : result.runs) {
    const std::size_t size = run.selected.size();
    result.min_size = std::min(result.min_size, size);
    result.max_size = std::max(result.max_size, size);
    total += static_cast<double>(size);
  }
  result.mean_size = total / static_cast<double>(result.runs.size());
  return result;
}

}  // namespace benchsel

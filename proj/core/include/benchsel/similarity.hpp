#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "benchsel/feature_table.hpp"
#include "benchsel/instance_key.hpp"

namespace benchsel {

/// Undirected simple graph over instance keys. An edge is present exactly
/// when the cosine similarity of the two feature rows reaches the threshold
/// (inclusive). Immutable after construction.
class SimilarityGraph {
 public:
  SimilarityGraph() = default;
  SimilarityGraph(std::vector<InstanceKey> nodes,
                  std::vector<std::pair<std::size_t, std::size_t>> edges,
                  double threshold);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  double threshold() const { return threshold_; }

  const std::vector<InstanceKey>& nodes() const { return nodes_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const {
    return edges_;
  }
  /// Sorted neighbor indices of node i.
  std::span<const std::size_t> neighbors(std::size_t i) const;
  std::size_t degree(std::size_t i) const { return neighbors(i).size(); }

 private:
  std::vector<InstanceKey> nodes_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;  // u < v
  std::vector<std::size_t> adjacency_;        // flattened neighbor lists
  std::vector<std::size_t> adjacency_start_;  // size node_count()+1
  double threshold_ = 1.0;
};

/// dot(a,b) / (|a| |b|), clamped to [-1, 1]. Zero-norm input is a domain
/// error, never silently 0.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

struct GraphOptions {
  /// Rescale every feature column to [0, 1] before computing similarities.
  /// Off by default: similarities are taken on raw feature values.
  bool rescale_columns = false;
};

/// Exhaustive O(n^2) construction; node order = table row order. A zero-norm
/// row is an error naming the instance.
SimilarityGraph build_graph(const FeatureTable& table, double threshold,
                            const GraphOptions& options = {});

/// The n x n cosine similarity matrix the graph construction gates on
/// (row-major, diagonal = 1).
std::vector<double> similarity_matrix(const FeatureTable& table,
                                      const GraphOptions& options = {});

struct DegreeStatistics {
  std::vector<std::size_t> degrees;  // per node, in node order
  std::size_t min = 0;
  std::size_t max = 0;
  double mean = 0.0;
  /// ECDF breakpoints: (degree value, fraction of nodes with degree <= value).
  std::vector<std::pair<std::size_t, double>> ecdf;
};
DegreeStatistics degree_statistics(const SimilarityGraph& graph);

/// Connected components as node-index sets, ordered by size descending then
/// by smallest contained index.
std::vector<std::vector<std::size_t>> connected_components(
    const SimilarityGraph& graph);

/// Edge list "u_key v_key similarity" next to a JSON header carrying the
/// threshold and node order.
void save_graph(const SimilarityGraph& graph, const FeatureTable& table,
                const std::string& edge_path, const std::string& header_path,
                const GraphOptions& options = {},
                const std::vector<std::string>& config_lines = {});

}  // namespace benchsel

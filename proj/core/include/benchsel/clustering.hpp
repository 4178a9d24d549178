#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "benchsel/feature_table.hpp"
#include "benchsel/instance_key.hpp"

namespace benchsel {

/// Bottom-up merging is inherently sequential and deterministic: minimum
/// linkage-distance ties break on the smallest (i, j) lexicographic pair of
/// cluster ids (ids are the smallest member row index while merging).
enum class Linkage { kAverage, kComplete, kSingle };

/// Per-feature mean (default) or median centroids.
enum class CentroidKind { kMean, kMedian };

struct MergeEvent {
  std::size_t cluster_a = 0;  // representative ids at merge time, a < b
  std::size_t cluster_b = 0;
  double distance = 0.0;
};

/// Result of cutting the dendrogram at k clusters. Cluster ids are contiguous
/// 0..k-1, ordered by smallest member row index; every cluster is non-empty.
class ClusterModel {
 public:
  ClusterModel() = default;
  ClusterModel(std::vector<InstanceKey> keys,
               std::vector<std::size_t> assignments,
               std::vector<std::vector<double>> centroids,
               std::vector<MergeEvent> trace);

  std::size_t k() const { return centroids_.size(); }
  const std::vector<InstanceKey>& keys() const { return keys_; }
  /// Cluster id per table row (aligned with keys()).
  const std::vector<std::size_t>& assignments() const { return assignments_; }
  std::size_t cluster_of(const InstanceKey& key) const;
  /// Row indices of one cluster, ascending.
  std::vector<std::size_t> members(std::size_t cluster) const;
  std::vector<std::size_t> cluster_sizes() const;
  const std::vector<double>& centroid(std::size_t cluster) const {
    return centroids_[cluster];
  }
  const std::vector<MergeEvent>& linkage_trace() const { return trace_; }

 private:
  std::vector<InstanceKey> keys_;
  std::vector<std::size_t> assignments_;
  std::vector<std::vector<double>> centroids_;
  std::vector<MergeEvent> trace_;
};

/// Agglomerative clustering under cosine distance (1 - cosine similarity),
/// cut at k clusters. Deterministic for identical input.
ClusterModel agglomerative_cluster(const FeatureTable& table, std::size_t k,
                                   Linkage linkage = Linkage::kAverage,
                                   CentroidKind centroid = CentroidKind::kMean);

/// Mean over instances of (b-a)/max(a,b) with cosine distance; singleton
/// clusters contribute 0. k = 1 is a domain error.
double silhouette_score(const FeatureTable& table, const ClusterModel& model);

/// The k in [k_min, k_max] maximizing the silhouette among k >= min_total
/// (so one representative per cluster yields at least min_total instances);
/// ties resolve to the smallest k. Empty feasible set is a constraint error.
std::size_t choose_k(const FeatureTable& table, std::size_t k_min,
                     std::size_t k_max, std::size_t min_total,
                     Linkage linkage = Linkage::kAverage);

/// Re-clusters the largest cluster (ties to the lowest cluster id) into sub_k
/// subclusters: k' = k - 1 + sub_k. Non-largest clusters keep their relative
/// order; subclusters are appended.
ClusterModel split_largest(const FeatureTable& table, const ClusterModel& model,
                           std::size_t sub_k,
                           Linkage linkage = Linkage::kAverage,
                           CentroidKind centroid = CentroidKind::kMean);

/// Per cluster, the member with maximum cosine similarity to the centroid;
/// ties resolve to the smallest row index. Output length = k.
std::vector<InstanceKey> centroid_representatives(const FeatureTable& table,
                                                  const ClusterModel& model);

/// Per cluster, the ceil(fraction * size) members nearest the centroid by
/// cosine similarity (descending; ties to the smallest row index). Pools are
/// never empty, and pools(f1) is a prefix of pools(f2) whenever f1 <= f2.
std::vector<std::vector<InstanceKey>> representative_pools(
    const FeatureTable& table, const ClusterModel& model, double fraction);

/// `repetitions` suites, each drawing one member uniformly from every
/// cluster's pool. Deterministic per (seed, repetition index).
std::vector<std::vector<InstanceKey>> sample_suites(
    const std::vector<std::vector<InstanceKey>>& pools, int repetitions,
    std::uint64_t seed);

/// CSV export: suite,problem_id,instance_id,dimension,cluster_id.
void save_cluster_assignments(const ClusterModel& model,
                              const std::string& path,
                              const std::vector<std::string>& comments = {});

}  // namespace benchsel

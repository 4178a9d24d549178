#include "benchsel/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include "benchsel/error.hpp"
#include "benchsel/rng.hpp"
#include "benchsel/similarity.hpp"
#include "benchsel/stats.hpp"

namespace benchsel {

namespace {

double cosine_distance(std::span<const double> a, std::span<const double> b) {
  return 1.0 - cosine_similarity(a, b);
}

std::vector<double> distance_matrix(const FeatureTable& table) {
  const std::size_t n = table.rows();
  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = cosine_distance(table.row(i), table.row(j));
      dist[i * n + j] = d;
      dist[j * n + i] = d;
    }
  return dist;
}

std::vector<double> compute_centroid(const FeatureTable& table,
                                     const std::vector<std::size_t>& members,
                                     CentroidKind kind) {
  const std::size_t d = table.cols();
  std::vector<double> centroid(d, 0.0);
  if (kind == CentroidKind::kMean) {
    for (const std::size_t i : members)
      for (std::size_t j = 0; j < d; ++j) centroid[j] += table.at(i, j);
    for (double& c : centroid) c /= static_cast<double>(members.size());
  } else {
    std::vector<double> column(members.size());
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t m = 0; m < members.size(); ++m)
        column[m] = table.at(members[m], j);
      centroid[j] = stats::median(column);
    }
  }
  return centroid;
}

// Members ranked by similarity to the cluster centroid, descending, row-index
// ascending on ties. A zero-norm centroid degenerates to the index order.
std::vector<std::size_t> rank_by_centroid(const FeatureTable& table,
                                          const std::vector<std::size_t>& members,
                                          const std::vector<double>& centroid) {
  double norm = 0.0;
  for (const double c : centroid) norm += c * c;
  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(members.size());
  for (const std::size_t i : members) {
    const double sim =
        norm > 0.0 ? cosine_similarity(table.row(i), centroid) : 0.0;
    scored.emplace_back(-sim, i);
  }
  std::sort(scored.begin(), scored.end());
  std::vector<std::size_t> ranked;
  ranked.reserve(members.size());
  for (const auto& [neg_sim, i] : scored) ranked.push_back(i);
  return ranked;
}

ClusterModel finalize_model(const FeatureTable& table,
                            const std::vector<std::vector<std::size_t>>& groups,
                            std::vector<MergeEvent> trace, CentroidKind kind) {
  // Contiguous ids ordered by smallest member row index.
  std::vector<std::size_t> order(groups.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return groups[a].front() < groups[b].front();
  });

  std::vector<std::size_t> assignments(table.rows(), 0);
  std::vector<std::vector<double>> centroids(groups.size());
  for (std::size_t id = 0; id < order.size(); ++id) {
    const auto& members = groups[order[id]];
    for (const std::size_t i : members) assignments[i] = id;
    centroids[id] = compute_centroid(table, members, kind);
  }
  return ClusterModel(table.keys(), std::move(assignments),
                      std::move(centroids), std::move(trace));
}

void check_consistent(const FeatureTable& table, const ClusterModel& model) {
  if (model.keys() != table.keys())
    throw AlignmentError("cluster model does not match feature table keys");
}

}  // namespace

ClusterModel::ClusterModel(std::vector<InstanceKey> keys,
                           std::vector<std::size_t> assignments,
                           std::vector<std::vector<double>> centroids,
                           std::vector<MergeEvent> trace)
    : keys_(std::move(keys)),
      assignments_(std::move(assignments)),
      centroids_(std::move(centroids)),
      trace_(std::move(trace)) {
  if (assignments_.size() != keys_.size())
    throw DomainError("cluster model: assignment/key size mismatch");
  std::vector<bool> used(centroids_.size(), false);
  for (const std::size_t id : assignments_) {
    if (id >= centroids_.size())
      throw DomainError("cluster model: assignment id out of range");
    used[id] = true;
  }
  for (std::size_t id = 0; id < used.size(); ++id)
    if (!used[id])
      throw DomainError("cluster model: empty cluster " + std::to_string(id));
}

std::size_t ClusterModel::cluster_of(const InstanceKey& key) const {
  for (std::size_t i = 0; i < keys_.size(); ++i)
    if (keys_[i] == key) return assignments_[i];
  throw IntegrityError("key not in cluster model: " + key.to_string());
}

std::vector<std::size_t> ClusterModel::members(std::size_t cluster) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignments_.size(); ++i)
    if (assignments_[i] == cluster) out.push_back(i);
  return out;
}

std::vector<std::size_t> ClusterModel::cluster_sizes() const {
  std::vector<std::size_t> sizes(k(), 0);
  for (const std::size_t id : assignments_) ++sizes[id];
  return sizes;
}

ClusterModel agglomerative_cluster(const FeatureTable& table, std::size_t k,
                                   Linkage linkage, CentroidKind centroid) {
  const std::size_t n = table.rows();
  if (k < 1 || k > n)
    throw DomainError("agglomerative_cluster: k must be in [1, n], got " +
                      std::to_string(k));

  std::vector<double> dist = distance_matrix(table);
  // Active clusters are keyed by representative id = smallest member row
  // index; dist rows/cols for a representative hold its cluster's linkage
  // distance under Lance-Williams updates.
  std::vector<bool> active(n, true);
  std::vector<std::vector<std::size_t>> members(n);
  for (std::size_t i = 0; i < n; ++i) members[i] = {i};

  std::vector<MergeEvent> trace;
  trace.reserve(n - k);
  for (std::size_t merges = 0; merges < n - k; ++merges) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = n, bj = n;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!active[j]) continue;
        if (dist[i * n + j] < best) {
          best = dist[i * n + j];
          bi = i;
          bj = j;
        }
      }
    }

    const double si = static_cast<double>(members[bi].size());
    const double sj = static_cast<double>(members[bj].size());
    for (std::size_t t = 0; t < n; ++t) {
      if (!active[t] || t == bi || t == bj) continue;
      double merged = 0.0;
      switch (linkage) {
        case Linkage::kAverage:
          merged = (si * dist[t * n + bi] + sj * dist[t * n + bj]) / (si + sj);
          break;
        case Linkage::kComplete:
          merged = std::max(dist[t * n + bi], dist[t * n + bj]);
          break;
        case Linkage::kSingle:
          merged = std::min(dist[t * n + bi], dist[t * n + bj]);
          break;
      }
      dist[t * n + bi] = merged;
      dist[bi * n + t] = merged;
    }
    members[bi].insert(members[bi].end(), members[bj].begin(),
                       members[bj].end());
    std::sort(members[bi].begin(), members[bi].end());
    active[bj] = false;
    trace.push_back(MergeEvent{bi, bj, best});
  }

  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i)
    if (active[i]) groups.push_back(members[i]);
  return finalize_model(table, groups, std::move(trace), centroid);
}

double silhouette_score(const FeatureTable& table, const ClusterModel& model) {
  check_consistent(table, model);
  if (model.k() < 2)
    throw DomainError("silhouette_score: needs at least 2 clusters");

  const std::size_t n = table.rows();
  const std::vector<double> dist = distance_matrix(table);
  const auto sizes = model.cluster_sizes();
  const auto& assign = model.assignments();

  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (sizes[assign[i]] == 1) continue;  // singleton contributes 0
    std::vector<double> mean_dist(model.k(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      mean_dist[assign[j]] += dist[i * n + j];
    }
    double a = 0.0;
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < model.k(); ++c) {
      if (c == assign[i]) {
        a = mean_dist[c] / static_cast<double>(sizes[c] - 1);
      } else if (sizes[c] > 0) {
        b = std::min(b, mean_dist[c] / static_cast<double>(sizes[c]));
      }
    }
    const double denom = std::max(a, b);
    if (denom > 0.0) total += (b - a) / denom;
  }
  return total / static_cast<double>(n);
}

std::size_t choose_k(const FeatureTable& table, std::size_t k_min,
                     std::size_t k_max, std::size_t min_total,
                     Linkage linkage) {
  const std::size_t n = table.rows();
  const std::size_t lo = std::max<std::size_t>({k_min, 2, min_total});
  const std::size_t hi = std::min(k_max, n);
  if (lo > hi)
    throw ConstraintError(
        "choose_k: no feasible cluster count in [" + std::to_string(k_min) +
        ", " + std::to_string(k_max) + "] with minimum suite size " +
        std::to_string(min_total));

  std::size_t best_k = lo;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t k = lo; k <= hi; ++k) {
    const double score =
        silhouette_score(table, agglomerative_cluster(table, k, linkage));
    if (score > best_score) {
      best_score = score;
      best_k = k;
    }
  }
  return best_k;
}

ClusterModel split_largest(const FeatureTable& table, const ClusterModel& model,
                           std::size_t sub_k, Linkage linkage,
                           CentroidKind centroid) {
  check_consistent(table, model);
  const auto sizes = model.cluster_sizes();
  std::size_t largest = 0;
  for (std::size_t c = 1; c < sizes.size(); ++c)
    if (sizes[c] > sizes[largest]) largest = c;  // ties keep the lowest id
  if (sub_k < 1 || sub_k > sizes[largest])
    throw DomainError("split_largest: sub_k must be in [1, largest size]");

  const auto largest_members = model.members(largest);
  std::vector<InstanceKey> sub_keys;
  sub_keys.reserve(largest_members.size());
  for (const std::size_t i : largest_members)
    sub_keys.push_back(table.keys()[i]);
  const FeatureTable sub_table = table.select_rows(sub_keys);
  const ClusterModel sub_model =
      agglomerative_cluster(sub_table, sub_k, linkage, centroid);

  // Non-largest clusters keep relative order; subclusters are appended.
  std::vector<std::size_t> assignments(table.rows(), 0);
  std::vector<std::size_t> remap(model.k(), 0);
  std::size_t next = 0;
  for (std::size_t c = 0; c < model.k(); ++c)
    if (c != largest) remap[c] = next++;
  const std::size_t sub_base = next;

  for (std::size_t i = 0; i < table.rows(); ++i) {
    const std::size_t original = model.assignments()[i];
    if (original != largest) {
      assignments[i] = remap[original];
    } else {
      const std::size_t within = sub_table.row_index(table.keys()[i]);
      assignments[i] = sub_base + sub_model.assignments()[within];
    }
  }

  const std::size_t new_k = model.k() - 1 + sub_k;
  std::vector<std::vector<std::size_t>> groups(new_k);
  for (std::size_t i = 0; i < table.rows(); ++i)
    groups[assignments[i]].push_back(i);

  std::vector<std::vector<double>> centroids(new_k);
  for (std::size_t c = 0; c < new_k; ++c)
    centroids[c] = compute_centroid(table, groups[c], centroid);

  std::vector<MergeEvent> trace = model.linkage_trace();
  trace.insert(trace.end(), sub_model.linkage_trace().begin(),
               sub_model.linkage_trace().end());
  return ClusterModel(table.keys(), std::move(assignments),
                      std::move(centroids), std::move(trace));
}

std::vector<InstanceKey> centroid_representatives(const FeatureTable& table,
                                                  const ClusterModel& model) {
  check_consistent(table, model);
  std::vector<InstanceKey> representatives;
  representatives.reserve(model.k());
  for (std::size_t c = 0; c < model.k(); ++c) {
    const auto ranked =
        rank_by_centroid(table, model.members(c), model.centroid(c));
    representatives.push_back(table.keys()[ranked.front()]);
  }
  return representatives;
}

std::vector<std::vector<InstanceKey>> representative_pools(
    const FeatureTable& table, const ClusterModel& model, double fraction) {
  check_consistent(table, model);
  if (!(fraction > 0.0) || fraction > 1.0)
    throw DomainError("representative_pools: fraction must be in (0, 1]");

  std::vector<std::vector<InstanceKey>> pools(model.k());
  for (std::size_t c = 0; c < model.k(); ++c) {
    const auto members = model.members(c);
    const auto ranked = rank_by_centroid(table, members, model.centroid(c));
    const auto count = std::max<std::size_t>(
        1, static_cast<std::size_t>(
               std::ceil(fraction * static_cast<double>(members.size()))));
    for (std::size_t r = 0; r < std::min(count, ranked.size()); ++r)
      pools[c].push_back(table.keys()[ranked[r]]);
  }
  return pools;
}

std::vector<std::vector<InstanceKey>> sample_suites(
    const std::vector<std::vector<InstanceKey>>& pools, int repetitions,
    std::uint64_t seed) {
  if (repetitions < 1)
    throw DomainError("sample_suites: repetitions must be >= 1");
  for (const auto& pool : pools)
    if (pool.empty()) throw DomainError("sample_suites: empty pool");

  std::vector<std::vector<InstanceKey>> suites;
  suites.reserve(static_cast<std::size_t>(repetitions));
  for (int rep = 0; rep < repetitions; ++rep) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(rep)));
    std::vector<InstanceKey> suite;
    suite.reserve(pools.size());
    for (const auto& pool : pools)
      suite.push_back(pool[static_cast<std::size_t>(rng.below(pool.size()))]);
    suites.push_back(std::move(suite));
  }
  return suites;
}

void save_cluster_assignments(const ClusterModel& model,
                              const std::string& path,
                              const std::vector<std::string>& comments) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write file: " + path);
  for (const auto& comment : comments) out << "# " << comment << "\n";
  out << "suite,problem_id,instance_id,dimension,cluster_id\n";
  for (std::size_t i = 0; i < model.keys().size(); ++i) {
    const auto& key = model.keys()[i];
    out << key.suite << "," << key.problem_id << "," << key.instance_id << ","
        << key.dimension << "," << model.assignments()[i] << "\n";
  }
}

}  // namespace benchsel

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "benchsel/clustering.hpp"
#include "benchsel/error.hpp"
#include "benchsel/rng.hpp"
#include "benchsel/similarity.hpp"

using namespace benchsel;

namespace {

FeatureTable table_from_rows(const std::vector<std::vector<double>>& rows) {
  std::vector<InstanceKey> keys;
  std::vector<double> values;
  std::vector<std::string> names;
  for (std::size_t j = 0; j < rows.front().size(); ++j)
    names.push_back("f" + std::to_string(j));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    keys.push_back(InstanceKey{"C", static_cast<int>(i) + 1, 1, 2});
    values.insert(values.end(), rows[i].begin(), rows[i].end());
  }
  return FeatureTable(keys, names, values);
}

// Two tight direction bundles of 5 vectors each around orthogonal axes.
FeatureTable two_bundles(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<double>> rows;
  for (int b = 0; b < 2; ++b)
    for (int i = 0; i < 5; ++i) {
      std::vector<double> row(3, 0.0);
      row[b] = 1.0;
      for (double& v : row) v += 0.02 * rng.normal();
      const double scale = rng.uniform(0.5, 2.0);  // cosine ignores length
      for (double& v : row) v *= scale;
      rows.push_back(row);
    }
  return table_from_rows(rows);
}

FeatureTable random_positive_table(std::size_t rows, std::size_t cols,
                                   std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<double>> data;
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<double> row(cols);
    for (double& v : row) v = rng.uniform(0.1, 1.0);
    data.push_back(row);
  }
  return table_from_rows(data);
}

double oracle_silhouette(const FeatureTable& table, const ClusterModel& model) {
  const std::size_t n = table.rows();
  const auto& assign = model.assignments();
  const auto sizes = model.cluster_sizes();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (sizes[assign[i]] == 1) continue;
    std::vector<double> sum(model.k(), 0.0);
    std::vector<std::size_t> count(model.k(), 0);
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      sum[assign[j]] += 1.0 - cosine_similarity(table.row(i), table.row(j));
      ++count[assign[j]];
    }
    const double a = sum[assign[i]] / static_cast<double>(count[assign[i]]);
    double b = 1e300;
    for (std::size_t c = 0; c < model.k(); ++c)
      if (c != assign[i] && count[c] > 0)
        b = std::min(b, sum[c] / static_cast<double>(count[c]));
    if (std::max(a, b) > 0) total += (b - a) / std::max(a, b);
  }
  return total / static_cast<double>(n);
}

}  // namespace

TEST_SUITE("clustering") {

TEST_CASE("k = n: every instance its own cluster; k = 1: one cluster") {
  const FeatureTable table = random_positive_table(7, 3, 1);

  const ClusterModel singletons = agglomerative_cluster(table, 7);
  CHECK(singletons.k() == 7);
  for (const auto size : singletons.cluster_sizes()) CHECK(size == 1);

  const ClusterModel all = agglomerative_cluster(table, 1);
  CHECK(all.k() == 1);
  CHECK(all.cluster_sizes().front() == 7);

  CHECK_THROWS_AS(agglomerative_cluster(table, 8), DomainError);
}

TEST_CASE("two tight bundles are recovered exactly at k = 2") {
  const FeatureTable table = two_bundles(42);
  const ClusterModel model = agglomerative_cluster(table, 2);
  REQUIRE(model.k() == 2);

  // Brute-force oracle: intra-bundle cosine distance < inter-bundle.
  double max_intra = 0.0, min_inter = 2.0;
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = i + 1; j < 10; ++j) {
      const double dist = 1.0 - cosine_similarity(table.row(i), table.row(j));
      if (i / 5 == j / 5)
        max_intra = std::max(max_intra, dist);
      else
        min_inter = std::min(min_inter, dist);
    }
  REQUIRE(max_intra < min_inter);

  // Bundle membership must match the cluster assignment exactly.
  for (std::size_t i = 0; i < 10; ++i)
    CHECK(model.assignments()[i] == (i < 5 ? 0 : 1));
}

TEST_CASE("clustering is bitwise deterministic") {
  const FeatureTable table = random_positive_table(20, 4, 5);
  const ClusterModel a = agglomerative_cluster(table, 5);
  const ClusterModel b = agglomerative_cluster(table, 5);
  CHECK(a.assignments() == b.assignments());
  for (std::size_t c = 0; c < a.k(); ++c)
    CHECK(a.centroid(c) == b.centroid(c));
}

TEST_CASE("dendrogram nesting: cut at k-1 merges exactly two clusters of cut k") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const FeatureTable table = random_positive_table(16, 3, 100 + seed);
    for (std::size_t k = 15; k >= 2; --k) {
      const ClusterModel fine = agglomerative_cluster(table, k);
      const ClusterModel coarse = agglomerative_cluster(table, k - 1);
      // Map each fine cluster to the coarse cluster containing it; exactly
      // two fine clusters share a coarse id, all others are singletons of
      // the mapping.
      std::map<std::size_t, std::set<std::size_t>> image;
      for (std::size_t i = 0; i < table.rows(); ++i)
        image[coarse.assignments()[i]].insert(fine.assignments()[i]);
      std::size_t merged_pairs = 0;
      for (const auto& [coarse_id, fine_ids] : image) {
        CHECK(fine_ids.size() <= 2);
        if (fine_ids.size() == 2) ++merged_pairs;
      }
      CHECK(merged_pairs == 1);
    }
  }
}

TEST_CASE("silhouette: all singletons score 0; k = 1 is an error") {
  const FeatureTable table = random_positive_table(6, 3, 9);
  CHECK(silhouette_score(table, agglomerative_cluster(table, 6)) == 0.0);
  CHECK_THROWS_AS(silhouette_score(table, agglomerative_cluster(table, 1)),
                  DomainError);
}

TEST_CASE("silhouette: bundles at k = 2 score > 0.9 and beat k = 3") {
  const FeatureTable table = two_bundles(7);
  const ClusterModel two = agglomerative_cluster(table, 2);
  const ClusterModel three = agglomerative_cluster(table, 3);
  const double score_two = silhouette_score(table, two);
  const double score_three = silhouette_score(table, three);
  CHECK(score_two > 0.9);
  CHECK(score_three < score_two);

  CHECK(score_two == doctest::Approx(oracle_silhouette(table, two)).epsilon(1e-12));
  CHECK(score_three ==
        doctest::Approx(oracle_silhouette(table, three)).epsilon(1e-12));
}

TEST_CASE("choose_k: forced range, bundle fixture, min_total dominates") {
  const FeatureTable table = two_bundles(3);
  CHECK(choose_k(table, 2, 2, 0) == 2);
  CHECK(choose_k(table, 2, 6, 2) == 2);
  CHECK_THROWS_AS(choose_k(table, 2, 5, 10), ConstraintError);

  // Three tight bundles of 8: the silhouette peaks at k = 3, but
  // min_total = 10 forces the smallest feasible k >= 10.
  Rng rng(64);
  std::vector<std::vector<double>> rows;
  for (int b = 0; b < 3; ++b)
    for (int i = 0; i < 8; ++i) {
      std::vector<double> row(4, 0.0);
      row[b] = 1.0;
      for (double& v : row) v += 0.02 * rng.normal();
      rows.push_back(row);
    }
  const FeatureTable three = table_from_rows(rows);
  const std::size_t chosen = choose_k(three, 2, 15, 10);
  CHECK(chosen >= 10);

  // Oracle: silhouette sweep over the feasible range only.
  double best_score = -2.0;
  std::size_t best_k = 0;
  for (std::size_t k = 10; k <= 15; ++k) {
    const double score =
        oracle_silhouette(three, agglomerative_cluster(three, k));
    if (score > best_score) {
      best_score = score;
      best_k = k;
    }
  }
  CHECK(chosen == best_k);
  // The skipped k = 3 would have scored higher than any feasible k.
  CHECK(oracle_silhouette(three, agglomerative_cluster(three, 3)) > best_score);
}

TEST_CASE("split_largest: 12 -> 21 and 12 -> 26 cluster arithmetic") {
  // 11 isolated axis directions plus a 29-vector bundle: cutting at 12
  // leaves the bundle intact as the unique largest cluster.
  Rng rng(17);
  std::vector<std::vector<double>> rows;
  for (int axis = 0; axis < 11; ++axis) {
    std::vector<double> row(12, 0.0);
    row[axis] = 1.0;
    rows.push_back(row);
  }
  for (int i = 0; i < 29; ++i) {
    std::vector<double> row(12, 0.0);
    row[11] = 1.0;
    for (double& v : row) v += 0.01 * rng.normal();
    rows.push_back(row);
  }
  const FeatureTable table = table_from_rows(rows);
  const ClusterModel base = agglomerative_cluster(table, 12);

  const auto sizes = base.cluster_sizes();
  const std::size_t largest =
      static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) -
                               sizes.begin());
  REQUIRE(sizes[largest] == 29);

  const ClusterModel split10 = split_largest(table, base, 10);
  CHECK(split10.k() == 21);
  const ClusterModel split15 = split_largest(table, base, 15);
  CHECK(split15.k() == 26);

  // Non-largest clusters keep their membership and relative order.
  std::size_t expected_id = 0;
  for (std::size_t c = 0; c < base.k(); ++c) {
    if (c == largest) continue;
    const auto members = base.members(c);
    for (const std::size_t i : members)
      CHECK(split10.assignments()[i] == expected_id);
    ++expected_id;
  }

  // Subcluster ids occupy 11..20 and partition the largest cluster.
  for (const std::size_t i : base.members(largest))
    CHECK(split10.assignments()[i] >= 11);

  const ClusterModel noop = split_largest(table, base, 1);
  CHECK(noop.k() == 12);
  CHECK_THROWS_AS(split_largest(table, base, sizes[largest] + 1), DomainError);
}

TEST_CASE("centroid representatives: singleton, exact member, argmax oracle") {
  SUBCASE("singleton cluster returns its sole member") {
    const FeatureTable table = two_bundles(1);
    const ClusterModel model = agglomerative_cluster(table, 10);
    const auto reps = centroid_representatives(table, model);
    REQUIRE(reps.size() == 10);
    for (std::size_t c = 0; c < 10; ++c)
      CHECK(reps[c] == table.keys()[model.members(c).front()]);
  }

  SUBCASE("a member equal to the mean direction is selected") {
    const FeatureTable table = table_from_rows(
        {{2.0, 2.0}, {1.0, 0.0}, {0.0, 1.0}});  // row0 = mean direction
    const ClusterModel model = agglomerative_cluster(table, 1);
    const auto reps = centroid_representatives(table, model);
    CHECK(reps.front() == table.keys()[0]);
  }

  SUBCASE("random 20-member cluster matches the exhaustive argmax") {
    const FeatureTable table = random_positive_table(20, 4, 23);
    const ClusterModel model = agglomerative_cluster(table, 1);
    const auto reps = centroid_representatives(table, model);

    const auto& centroid = model.centroid(0);
    double best_sim = -2.0;
    std::size_t best_row = 0;
    for (std::size_t i = 0; i < 20; ++i) {
      const double sim = cosine_similarity(table.row(i), centroid);
      if (sim > best_sim) {
        best_sim = sim;
        best_row = i;
      }
    }
    CHECK(reps.front() == table.keys()[best_row]);
  }
}

TEST_CASE("representatives are invariant under a global positive rescale") {
  const FeatureTable table = random_positive_table(15, 3, 29);
  std::vector<double> scaled_values(table.values());
  for (double& v : scaled_values) v *= 42.0;
  const FeatureTable scaled(table.keys(), table.feature_names(), scaled_values);

  const ClusterModel model = agglomerative_cluster(table, 4);
  const ClusterModel scaled_model = agglomerative_cluster(scaled, 4);
  CHECK(model.assignments() == scaled_model.assignments());
  CHECK(centroid_representatives(table, model) ==
        centroid_representatives(scaled, scaled_model));
}

TEST_CASE("representative pools: whole cluster, singleton, top-2 oracle") {
  const FeatureTable table = random_positive_table(8, 3, 40);
  const ClusterModel model = agglomerative_cluster(table, 1);

  const auto full = representative_pools(table, model, 1.0);
  REQUIRE(full.size() == 1);
  CHECK(full.front().size() == 8);

  const auto quarter = representative_pools(table, model, 0.25);
  REQUIRE(quarter.front().size() == 2);  // ceil(0.25 * 8)

  // Oracle: rank members by similarity to centroid, take top 2.
  const auto& centroid = model.centroid(0);
  std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t i = 0; i < 8; ++i)
    ranked.emplace_back(-cosine_similarity(table.row(i), centroid), i);
  std::sort(ranked.begin(), ranked.end());
  CHECK(quarter.front()[0] == table.keys()[ranked[0].second]);
  CHECK(quarter.front()[1] == table.keys()[ranked[1].second]);

  // Prefix property: pools(f1) is a prefix of pools(f2) for f1 <= f2.
  const auto half = representative_pools(table, model, 0.5);
  for (std::size_t i = 0; i < quarter.front().size(); ++i)
    CHECK(quarter.front()[i] == half.front()[i]);
}

TEST_CASE("sample_suites: singleton pools repeat; frequencies near uniform") {
  const std::vector<std::vector<InstanceKey>> singleton_pools{
      {{"A", 1, 1, 2}}, {{"A", 2, 1, 2}}, {{"A", 3, 1, 2}}};
  const auto suites = sample_suites(singleton_pools, 5, 99);
  REQUIRE(suites.size() == 5);
  for (const auto& suite : suites) {
    CHECK(suite == suites.front());
    CHECK(suite.size() == 3);
  }

  const std::vector<std::vector<InstanceKey>> pair_pools{
      {{"A", 1, 1, 2}, {"A", 2, 1, 2}}};
  const auto many = sample_suites(pair_pools, 10000, 7);
  int first_count = 0;
  for (const auto& suite : many)
    if (suite.front() == pair_pools.front().front()) ++first_count;
  const double freq = first_count / 10000.0;
  CHECK(freq > 0.45);
  CHECK(freq < 0.55);

  // Deterministic per (seed, repetition): same seed reproduces the draw.
  CHECK(sample_suites(pair_pools, 10000, 7) == many);
}

TEST_CASE("21 clusters, 15 repetitions -> 15 suites of 21 instances") {
  const FeatureTable table = random_positive_table(50, 3, 61);
  ClusterModel model = agglomerative_cluster(table, 12);
  model = split_largest(table, model, 10);
  REQUIRE(model.k() == 21);
  const auto pools = representative_pools(table, model, 0.125);
  const auto suites = sample_suites(pools, 15, 4);
  CHECK(suites.size() == 15);
  for (const auto& suite : suites) CHECK(suite.size() == 21);
}

}  // TEST_SUITE

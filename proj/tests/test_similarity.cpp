#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "benchsel/error.hpp"
#include "benchsel/rng.hpp"
#include "benchsel/similarity.hpp"

using namespace benchsel;

namespace {

FeatureTable random_table(std::size_t rows, std::size_t cols,
                          std::uint64_t seed) {
  Rng rng(seed);
  std::vector<InstanceKey> keys;
  std::vector<double> values;
  std::vector<std::string> names;
  for (std::size_t j = 0; j < cols; ++j) names.push_back("f" + std::to_string(j));
  for (std::size_t i = 0; i < rows; ++i) {
    keys.push_back(InstanceKey{"R", static_cast<int>(i) + 1, 1, 2});
    for (std::size_t j = 0; j < cols; ++j)
      values.push_back(rng.normal());
  }
  return FeatureTable(keys, names, values);
}

}  // namespace

TEST_SUITE("similarity") {

TEST_CASE("cosine: identical direction, orthogonal, frozen value") {
  const std::vector<double> a{2.0, 1.0, -3.0};
  CHECK(cosine_similarity(a, a) == 1.0);

  const std::vector<double> e1{1.0, 0.0};
  const std::vector<double> e2{0.0, 1.0};
  CHECK(cosine_similarity(e1, e2) == 0.0);

  const std::vector<double> diag{1.0, 1.0};
  CHECK(cosine_similarity(e1, diag) ==
        doctest::Approx(0.7071067811865475).epsilon(1e-15));
}

TEST_CASE("cosine: scaling invariance and symmetry") {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(5), b(5);
    for (double& v : a) v = rng.normal();
    for (double& v : b) v = rng.normal();
    const double c = rng.uniform(0.1, 100.0);
    std::vector<double> scaled = a;
    for (double& v : scaled) v *= c;
    CHECK(cosine_similarity(a, scaled) == 1.0);
    CHECK(cosine_similarity(a, b) == cosine_similarity(b, a));
    CHECK(cosine_similarity(a, b) >= -1.0);
    CHECK(cosine_similarity(a, b) <= 1.0);
  }
}

TEST_CASE("cosine: zero-norm vector is a domain error, never silently 0") {
  const std::vector<double> zero{0.0, 0.0};
  const std::vector<double> a{1.0, 2.0};
  CHECK_THROWS_AS(cosine_similarity(zero, a), DomainError);
  CHECK_THROWS_AS(cosine_similarity(a, zero), DomainError);
}

TEST_CASE("build_graph: threshold above all similarities -> edgeless") {
  const FeatureTable table = random_table(12, 4, 9);
  const SimilarityGraph graph = build_graph(table, 1.0 + 1e-9);
  CHECK(graph.edge_count() == 0);
  CHECK(graph.node_count() == 12);
}

TEST_CASE("build_graph: two identical rows give exactly one edge") {
  const std::vector<InstanceKey> keys{{"A", 1, 1, 2}, {"A", 2, 1, 2}};
  const FeatureTable table(keys, {"x", "y"}, {1.0, 2.0, 1.0, 2.0});
  const SimilarityGraph graph = build_graph(table, 1.0);
  CHECK(graph.edge_count() == 1);
}

TEST_CASE("build_graph: zero-norm row error names the instance") {
  const std::vector<InstanceKey> keys{{"A", 1, 1, 2}, {"A", 7, 3, 2}};
  const FeatureTable table(keys, {"x", "y"}, {1.0, 2.0, 0.0, 0.0});
  CHECK_THROWS_WITH_AS(build_graph(table, 0.5), doctest::Contains("A_7_3"),
                       IntegrityError);
}

TEST_CASE("threshold monotonicity: edges(t2) subset of edges(t1) for t1 < t2") {
  const FeatureTable table = random_table(25, 3, 77);
  const SimilarityGraph loose = build_graph(table, 0.2);
  const SimilarityGraph tight = build_graph(table, 0.6);
  const std::set<std::pair<std::size_t, std::size_t>> loose_edges(
      loose.edges().begin(), loose.edges().end());
  for (const auto& edge : tight.edges()) CHECK(loose_edges.contains(edge));
  CHECK(tight.edge_count() <= loose.edge_count());
}

TEST_CASE("degree statistics: edgeless and complete graphs") {
  const FeatureTable table = random_table(8, 3, 5);

  const SimilarityGraph edgeless = build_graph(table, 1.0 + 1e-9);
  const DegreeStatistics none = degree_statistics(edgeless);
  CHECK(none.min == 0);
  CHECK(none.max == 0);
  CHECK(none.mean == 0.0);
  CHECK(none.ecdf.size() == 1);
  CHECK(none.ecdf.front() == std::pair<std::size_t, double>{0, 1.0});

  const SimilarityGraph complete = build_graph(table, -1.0);
  const DegreeStatistics full = degree_statistics(complete);
  CHECK(full.min == 7);
  CHECK(full.max == 7);
  CHECK(full.mean == 7.0);
}

TEST_CASE("connected components: edgeless graph -> n singletons") {
  const FeatureTable table = random_table(6, 3, 21);
  const SimilarityGraph graph = build_graph(table, 1.0 + 1e-9);
  const auto components = connected_components(graph);
  CHECK(components.size() == 6);
  for (const auto& component : components) CHECK(component.size() == 1);
}

TEST_CASE("connected components: path a-b-c plus isolated d") {
  // Rows engineered so cos(a,b) and cos(b,c) are high, cos(a,c) lower, and d
  // is orthogonal to everything.
  const std::vector<InstanceKey> keys{
      {"P", 1, 1, 3}, {"P", 2, 1, 3}, {"P", 3, 1, 3}, {"P", 4, 1, 3}};
  const std::vector<double> values{
      1.0, 0.0, 0.0,   // a
      1.0, 0.4, 0.0,   // b: cos(a,b) ~ 0.93
      0.6, 0.8, 0.0,   // c: cos(b,c) ~ 0.85, cos(a,c) = 0.6
      0.0, 0.0, 1.0};  // d: orthogonal
  const FeatureTable table(keys, {"x", "y", "z"}, values);
  const SimilarityGraph graph = build_graph(table, 0.8);
  REQUIRE(graph.edge_count() == 2);

  const auto components = connected_components(graph);
  REQUIRE(components.size() == 2);
  CHECK(components[0] == std::vector<std::size_t>{0, 1, 2});
  CHECK(components[1] == std::vector<std::size_t>{3});

  // Partition: sizes sum to node count, pairwise disjoint.
  std::set<std::size_t> seen;
  std::size_t total = 0;
  for (const auto& component : components) {
    total += component.size();
    for (const std::size_t v : component) CHECK(seen.insert(v).second);
  }
  CHECK(total == graph.node_count());
}

TEST_CASE("rescale option changes similarities only when asked") {
  const FeatureTable table = random_table(10, 3, 55);
  const auto raw = similarity_matrix(table);
  const auto rescaled = similarity_matrix(table, GraphOptions{true});
  CHECK(raw.size() == rescaled.size());
  bool any_difference = false;
  for (std::size_t i = 0; i < raw.size(); ++i)
    any_difference |= raw[i] != rescaled[i];
  CHECK(any_difference);
}

}  // TEST_SUITE

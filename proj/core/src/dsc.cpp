#include "benchsel/dsc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "benchsel/error.hpp"
#include "benchsel/parallel.hpp"

namespace benchsel::dsc {

namespace {

// The two-sample stage behind the significance relation; the switch is the
// seam where another distribution test (e.g. Anderson-Darling) would slot in.
double pair_test_p_value(std::span<const double> a, std::span<const double> b,
                         PairTest test) {
  switch (test) {
    case PairTest::kKolmogorovSmirnov:
      return stats::ks_two_sample(a, b).p_value;
  }
  throw DomainError("unknown pair test");
}

// Fractional ranking of values ascending with exact-tie averaging.
std::vector<double> fractional_ranks(const std::vector<double>& values) {
  const std::size_t m = values.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(m, 0.0);
  std::size_t i = 0;
  while (i < m) {
    std::size_t j = i;
    while (j + 1 < m && values[order[j + 1]] == values[order[i]]) ++j;
    // Positions i+1 .. j+1 (1-based) share their average.
    const double shared = 0.5 * static_cast<double>(i + 1 + j + 1);
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = shared;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

std::vector<double> RankingMatrix::mean_ranks() const {
  std::vector<double> means(cols(), 0.0);
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j) means[j] += at(i, j);
  for (double& m : means) m /= static_cast<double>(rows());
  return means;
}

std::vector<double> dsc_rank_instance(
    const std::vector<std::pair<std::string, std::span<const double>>>& runs,
    double alpha, PairTest test) {
  const std::size_t m = runs.size();
  if (m < 2) throw DomainError("dsc_rank_instance: needs >= 2 algorithms");
  for (const auto& [name, values] : runs)
    if (values.size() < 2)
      throw DomainError("dsc_rank_instance: algorithm " + name +
                        " has fewer than 2 runs");

  // Pairwise KS with Bonferroni correction over the m(m-1)/2 pairs.
  const double pairs = 0.5 * static_cast<double>(m * (m - 1));
  std::vector<bool> related(m * m, false);
  for (std::size_t i = 0; i < m; ++i) related[i * m + i] = true;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double p = pair_test_p_value(runs[i].second, runs[j].second, test);
      const double corrected = std::min(1.0, p * pairs);
      if (corrected >= alpha) {
        related[i * m + j] = true;
        related[j * m + i] = true;
      }
    }
  }

  std::vector<double> means(m);
  for (std::size_t i = 0; i < m; ++i) means[i] = stats::mean(runs[i].second);

  // Components of the indistinguishable relation.
  std::vector<std::size_t> component(m, m);
  std::size_t component_count = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (component[i] != m) continue;
    std::vector<std::size_t> stack{i};
    component[i] = component_count;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < m; ++v)
        if (related[u * m + v] && component[v] == m) {
          component[v] = component_count;
          stack.push_back(v);
        }
    }
    ++component_count;
  }

  // Transitive iff every component is a clique of the relation.
  bool cliques = true;
  for (std::size_t i = 0; i < m && cliques; ++i)
    for (std::size_t j = i + 1; j < m && cliques; ++j)
      if (component[i] == component[j] && !related[i * m + j]) cliques = false;

  std::vector<double> ranks(m, 0.0);
  if (cliques) {
    // Order cliques by mean of member run-means ascending; a clique spanning
    // positions s..s+size-1 takes their average rank.
    std::vector<double> clique_mean(component_count, 0.0);
    std::vector<std::size_t> clique_size(component_count, 0);
    for (std::size_t i = 0; i < m; ++i) {
      clique_mean[component[i]] += means[i];
      ++clique_size[component[i]];
    }
    for (std::size_t c = 0; c < component_count; ++c)
      clique_mean[c] /= static_cast<double>(clique_size[c]);

    std::vector<std::size_t> order(component_count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return clique_mean[a] != clique_mean[b] ? clique_mean[a] < clique_mean[b]
                                              : a < b;
    });

    std::vector<double> clique_rank(component_count, 0.0);
    std::size_t position = 1;
    for (const std::size_t c : order) {
      const double span = static_cast<double>(clique_size[c]);
      clique_rank[c] = static_cast<double>(position) + (span - 1.0) / 2.0;
      position += clique_size[c];
    }
    for (std::size_t i = 0; i < m; ++i) ranks[i] = clique_rank[component[i]];
  } else {
    ranks = fractional_ranks(means);
  }
  return ranks;
}

RankingMatrix build_ranking_matrix(const PerformanceTable& perf,
                                   const std::vector<InstanceKey>& suite,
                                   double alpha) {
  RankingMatrix matrix;
  matrix.instances = suite;
  matrix.algorithms = perf.algorithms();
  if (matrix.algorithms.size() < 2)
    throw DomainError("build_ranking_matrix: needs >= 2 algorithms");

  for (const auto& key : suite)
    for (const auto& algo : matrix.algorithms)
      if (!perf.has(key, algo))
        throw IntegrityError("missing performance data for (" +
                             key.to_string() + ", " + algo + ")");

  matrix.ranks.resize(suite.size() * matrix.algorithms.size());
  parallel_for(suite.size(), [&](std::size_t i) {
    std::vector<std::pair<std::string, std::span<const double>>> runs;
    runs.reserve(matrix.algorithms.size());
    for (const auto& algo : matrix.algorithms)
      runs.emplace_back(algo, perf.runs(suite[i], algo));
    const auto row = dsc_rank_instance(runs, alpha);
    std::copy(row.begin(), row.end(),
              matrix.ranks.begin() +
                  static_cast<std::ptrdiff_t>(i * matrix.algorithms.size()));
  });
  return matrix;
}

FriedmanResult friedman_test(const RankingMatrix& ranks) {
  const std::size_t n = ranks.rows();
  const std::size_t k = ranks.cols();
  if (n < 2 || k < 2)
    throw DomainError("friedman_test: needs N >= 2 instances and k >= 2 "
                      "algorithms");

  std::vector<double> column_sums(k, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) column_sums[j] += ranks.at(i, j);

  double sum_squares = 0.0;
  for (const double r : column_sums) sum_squares += r * r;

  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  const double chi =
      12.0 / (nn * kk * (kk + 1.0)) * sum_squares - 3.0 * nn * (kk + 1.0);

  FriedmanResult result;
  result.chi_square = std::max(chi, 0.0);
  result.degrees_of_freedom = static_cast<int>(k) - 1;
  result.p_value =
      stats::chi_square_sf(result.chi_square, static_cast<double>(k - 1));
  result.small_n_warning = n < 10;
  return result;
}

std::vector<PairwiseOutcome> nemenyi_posthoc(const RankingMatrix& ranks,
                                             double alpha) {
  const std::size_t n = ranks.rows();
  const std::size_t k = ranks.cols();
  if (n < 1 || k < 2)
    throw DomainError("nemenyi_posthoc: needs N >= 1 and k >= 2");

  const auto means = ranks.mean_ranks();
  const double scale = std::sqrt(static_cast<double>(k) *
                                 (static_cast<double>(k) + 1.0) /
                                 (6.0 * static_cast<double>(n)));

  std::vector<PairwiseOutcome> outcomes;
  outcomes.reserve(k * (k - 1) / 2);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double q = std::fabs(means[i] - means[j]) / scale;
      const double p =
          stats::studentized_range_sf(q * std::sqrt(2.0), static_cast<int>(k));
      PairwiseOutcome outcome;
      outcome.algorithm_a = ranks.algorithms[i];
      outcome.algorithm_b = ranks.algorithms[j];
      outcome.p_value = p;
      outcome.alpha = alpha;
      outcome.significant = p < alpha;
      outcomes.push_back(std::move(outcome));
    }
  }
  return outcomes;
}

SuiteComparison compare_on_suite(const PerformanceTable& perf,
                                 const std::vector<InstanceKey>& suite,
                                 double alpha) {
  const RankingMatrix matrix = build_ranking_matrix(perf, suite, alpha);
  SuiteComparison comparison;
  if (matrix.rows() >= 2) {
    comparison.friedman = friedman_test(matrix);
  } else {
    // A 1-instance suite cannot carry the omnibus test; post-hoc outcomes
    // are still computed but flagged.
    comparison.friedman.applicable = false;
    comparison.friedman.degrees_of_freedom =
        static_cast<int>(matrix.cols()) - 1;
    comparison.friedman.small_n_warning = true;
  }
  comparison.pairwise = nemenyi_posthoc(matrix, alpha);
  comparison.omnibus_rejected =
      comparison.friedman.applicable && comparison.friedman.p_value < alpha;
  return comparison;
}

RobustnessReport robustness_count(
    const PerformanceTable& perf,
    const std::vector<std::vector<InstanceKey>>& suites, double alpha) {
  if (suites.empty()) throw DomainError("robustness_count: needs >= 1 suite");

  std::vector<SuiteComparison> comparisons(suites.size());
  parallel_for(suites.size(), [&](std::size_t s) {
    comparisons[s] = compare_on_suite(perf, suites[s], alpha);
  });

  RobustnessReport report;
  report.repetitions = static_cast<int>(suites.size());
  report.alpha = alpha;
  const auto& first = comparisons.front().pairwise;
  report.pairs.resize(first.size());
  for (std::size_t p = 0; p < first.size(); ++p) {
    report.pairs[p].algorithm_a = first[p].algorithm_a;
    report.pairs[p].algorithm_b = first[p].algorithm_b;
    for (const auto& comparison : comparisons) {
      report.pairs[p].suite_p_values.push_back(comparison.pairwise[p].p_value);
      report.pairs[p].no_significance_count += comparison.pairwise[p].bit();
    }
  }
  return report;
}

}  // namespace benchsel::dsc

#pragma once

// Per-instance ranking of algorithms from whole run distributions, the
// Friedman omnibus test over a suite, Nemenyi post-hoc pairwise p-values,
// the p >= alpha -> 1 binary translation, and robustness counting over
// repeated suite selections.

#include <map>
#include <span>
#include <string>
#include <vector>

#include "benchsel/instance_key.hpp"
#include "benchsel/performance_table.hpp"
#include "benchsel/stats.hpp"

namespace benchsel::dsc {

/// Two-sample test used inside the pairwise stage. Only Kolmogorov-Smirnov is
/// implemented; the enum marks the seam where Anderson-Darling could slot in.
enum class PairTest { kKolmogorovSmirnov };

/// Instances x algorithms matrix of fractional ranks in [1, m]; every row
/// sums to m(m+1)/2 exactly (ranks are integers or half-integers).
struct RankingMatrix {
  std::vector<InstanceKey> instances;
  std::vector<std::string> algorithms;
  std::vector<double> ranks;  // row-major

  std::size_t rows() const { return instances.size(); }
  std::size_t cols() const { return algorithms.size(); }
  double at(std::size_t i, std::size_t j) const { return ranks[i * cols() + j]; }
  /// Column means (average ranks per algorithm).
  std::vector<double> mean_ranks() const;
};

/// One rank row over the given algorithms' run values: pairwise KS with
/// Bonferroni correction builds the "indistinguishable" relation; when the
/// relation is a disjoint union of cliques, cliques are ordered by the mean
/// of member run-means (ascending, minimization) and share the average of
/// the positional ranks they span; otherwise ranks fall back to fractional
/// ranking of per-algorithm means with exact-tie averaging.
std::vector<double> dsc_rank_instance(
    const std::vector<std::pair<std::string, std::span<const double>>>& runs,
    double alpha, PairTest test = PairTest::kKolmogorovSmirnov);

/// One dsc_rank_instance row per suite instance, in suite order; algorithms
/// are the performance table's sorted algorithm names. Missing
/// (instance, algorithm) data is an integrity error naming the hole.
RankingMatrix build_ranking_matrix(const PerformanceTable& perf,
                                   const std::vector<InstanceKey>& suite,
                                   double alpha);

struct FriedmanResult {
  double chi_square = 0.0;
  int degrees_of_freedom = 0;
  double p_value = 1.0;
  bool small_n_warning = false;  // N < 10 instances
  bool applicable = true;        // false when N < 2 (comparison-level guard)
};

/// chi^2_F = [12 / (N k (k+1))] sum_j R_j^2 - 3 N (k+1), upper chi-square
/// tail with k-1 degrees of freedom. Requires N >= 2 and k >= 2; N < 10 sets
/// the warning flag.
FriedmanResult friedman_test(const RankingMatrix& ranks);

struct PairwiseOutcome {
  std::string algorithm_a;
  std::string algorithm_b;
  double p_value = 1.0;
  double alpha = 0.05;
  bool significant = false;  // p < alpha
  /// Binary rendering used in reports: 1 = no significance, 0 = significant.
  int bit() const { return significant ? 0 : 1; }
};

/// Nemenyi post-hoc: q_ij = |Rbar_i - Rbar_j| / sqrt(k(k+1)/(6N)), p = upper
/// studentized-range tail at q_ij * sqrt(2) with k groups, infinite dof.
std::vector<PairwiseOutcome> nemenyi_posthoc(const RankingMatrix& ranks,
                                             double alpha);

struct SuiteComparison {
  FriedmanResult friedman;
  std::vector<PairwiseOutcome> pairwise;
  /// Post-hoc outcomes are always computed; this flags whether the omnibus
  /// test rejected at alpha.
  bool omnibus_rejected = false;
};

SuiteComparison compare_on_suite(const PerformanceTable& perf,
                                 const std::vector<InstanceKey>& suite,
                                 double alpha);

struct PairRobustness {
  std::string algorithm_a;
  std::string algorithm_b;
  int no_significance_count = 0;      // suites with outcome bit 1
  std::vector<double> suite_p_values; // raw p per suite, for audit
};

struct RobustnessReport {
  int repetitions = 0;
  double alpha = 0.05;
  std::vector<PairRobustness> pairs;
  // Selection parameters recorded by the caller for the audit trail.
  std::string heuristic;
  std::string parameters;
};

/// Per algorithm pair, the count of suites on which the Nemenyi outcome was
/// "no significance" (bit 1). Suites are processed in parallel.
RobustnessReport robustness_count(
    const PerformanceTable& perf,
    const std::vector<std::vector<InstanceKey>>& suites, double alpha);

}  // namespace benchsel::dsc

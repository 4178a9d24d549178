#pragma once

// Exploratory landscape analysis features computed from a sampled design:
// dispersion, y-distribution, meta-model, principal components, nearest
// better clustering, and information content. Names follow the flacco
// conventions (disp.ratio_mean_02, ela_meta.lin_simple.adj_r2, ic.h.max, ...)
// so externally computed tables align column-wise.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "benchsel/design.hpp"
#include "benchsel/feature_table.hpp"
#include "benchsel/instance_key.hpp"

namespace benchsel::ela {

/// Ordered named feature values for one group; `degenerate` lists features
/// whose value is mathematically undefined on this design (the value slot
/// then holds a placeholder and extraction aborts the instance's row).
struct FeatureSet {
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::string> degenerate;

  double at(const std::string& name) const;
  void append(const FeatureSet& other);
};

inline constexpr double kDefaultDispersionQuantiles[] = {0.02, 0.05, 0.10,
                                                         0.25};

/// 16 dispersion measures: for each quantile q, ratio and difference of
/// {mean, median} pairwise distance among the best-q fraction versus all
/// points. Fitness ties are broken by point index.
FeatureSet dispersion_features(
    const Design& design,
    std::span<const double> quantiles = kDefaultDispersionQuantiles);

/// Skewness g1 = m3/m2^(3/2), excess kurtosis g2 = m4/m2^2 - 3, and the
/// number of local maxima of a Gaussian KDE (Silverman bandwidth, 512-point
/// grid). Zero variance flags skewness/kurtosis degenerate and reports one
/// peak.
FeatureSet ydist_features(std::span<const double> values);

/// 9 meta-model measures: adjusted R^2 of linear / linear-with-interactions /
/// pure-quadratic / quadratic-with-interactions least-squares fits, the
/// linear model's intercept and |coefficient| statistics, and the ratio
/// max|c_i|/min|c_i| of the pure-quadratic coefficients.
FeatureSet metamodel_features(const Design& design);

/// 8 PCA measures: proportion of components needed to reach 0.9 cumulative
/// explained variance and the first component's share, on covariance and
/// correlation, on X alone and on [X; y].
FeatureSet pca_features(const Design& design);

/// 5 nearest-better-clustering measures. The nearest-better neighbor is the
/// closest point with strictly smaller fitness; the global best point takes
/// the maximum of the others' nearest-better distances. Distance ratios are
/// guarded with epsilon = 1e-12.
FeatureSet nbc_features(const Design& design);

/// 5 information content measures over a greedy nearest-neighbor tour of the
/// design (random seeded start, ties to the lowest index): h.max, eps.s,
/// eps.max, eps.ratio, m0. The epsilon grid must be ascending.
FeatureSet ic_features(const Design& design, std::span<const double> eps_grid,
                       std::uint64_t seed);

/// {0} followed by 10^linspace(-5, 15, 1000).
std::vector<double> default_eps_grid();

/// All groups on one evaluated design, in fixed column order (46 features).
FeatureSet compute_all_features(const Design& design, std::uint64_t seed);

/// One problem instance the extractor can sample.
struct InstanceSource {
  InstanceKey key;
  Bounds bounds;
  std::function<double(std::span<const double>)> evaluate;
};

struct ExtractionConfig {
  std::size_t samples_per_dim = 150;  // design size n = samples_per_dim * d
  int repetitions = 30;
  int lhs_candidates = 50;
  std::vector<std::string> drop_columns = {"ic.eps.s"};
};

struct ExtractionResult {
  FeatureTable table;                  // successfully extracted rows
  std::vector<std::string> failures;   // one diagnostic per aborted instance
};

/// Samples each instance `repetitions` times (improved LHS, derived per-task
/// seeds), computes all feature groups per repetition, and median-aggregates
/// the repetition tables. Deterministic given the master seed; instances run
/// in parallel. A feature failure or non-finite value aborts that instance's
/// row and is reported in `failures`.
ExtractionResult extract_features(const std::vector<InstanceSource>& instances,
                                  const ExtractionConfig& config,
                                  std::uint64_t master_seed);

}  // namespace benchsel::ela

#include "benchsel/ela.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "benchsel/error.hpp"
#include "benchsel/parallel.hpp"
#include "benchsel/rng.hpp"
#include "benchsel/stats.hpp"

namespace benchsel::ela {

namespace {

constexpr double kRatioGuard = 1e-12;

double sq_distance(std::span<const double> a, std::span<const double> b) {
  double sq = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - b[k];
    sq += diff * diff;
  }
  return sq;
}

double distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(sq_distance(a, b));
}

// All pairwise distances of the rows listed in `idx`.
std::vector<double> pairwise_distances(const Design& design,
                                       std::span<const std::size_t> idx) {
  std::vector<double> dists;
  dists.reserve(idx.size() * (idx.size() - 1) / 2);
  for (std::size_t a = 0; a + 1 < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b)
      dists.push_back(distance(design.point(idx[a]), design.point(idx[b])));
  return dists;
}

// Indices sorted by (value, index): the deterministic "best-q" ordering.
std::vector<std::size_t> order_by_fitness(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] != values[b] ? values[a] < values[b] : a < b;
  });
  return order;
}

// Linear-interpolation quantile on sorted data (R type 7).
double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw DomainError("quantile of empty data");
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::string quantile_suffix(double q) {
  const int pct = static_cast<int>(std::lround(q * 100.0));
  return pct < 10 ? "0" + std::to_string(pct) : std::to_string(pct);
}

void check_design(const Design& design, std::size_t min_n,
                  const char* group) {
  if (design.size() < min_n)
    throw DomainError(std::string(group) + ": needs at least " +
                      std::to_string(min_n) + " points");
  if (design.values.size() != design.size())
    throw DomainError(std::string(group) + ": design has no objective values");
  for (double v : design.values)
    if (!std::isfinite(v))
      throw DomainError(std::string(group) + ": non-finite objective value");
}

Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                               Eigen::RowMajor>>
points_matrix(const Design& design) {
  return {design.points.data(), static_cast<Eigen::Index>(design.size()),
          static_cast<Eigen::Index>(design.dim())};
}

struct FitSummary {
  double adj_r2 = 0.0;
  Eigen::VectorXd coefficients;
};

// Least squares of y on the given model matrix (first column ones). The
// adjusted R^2 uses p = number of non-intercept regressors and is pinned to
// exactly 1 when RSS < 1e-18 * TSS.
FitSummary fit_model(const Eigen::MatrixXd& model, const Eigen::VectorXd& y) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(model);
  if (qr.rank() < model.cols())
    throw FeatureError("ela_meta: rank-deficient design matrix");
  FitSummary fit;
  fit.coefficients = qr.solve(y);
  const Eigen::VectorXd residual = y - model * fit.coefficients;
  const double rss = residual.squaredNorm();
  const double tss = (y.array() - y.mean()).matrix().squaredNorm();
  if (tss <= 0.0)
    throw DegenerateError("ela_meta: constant objective values");
  if (rss < 1e-18 * tss) {
    fit.adj_r2 = 1.0;
    return fit;
  }
  const double n = static_cast<double>(model.rows());
  const double p = static_cast<double>(model.cols() - 1);
  const double r2 = 1.0 - rss / tss;
  fit.adj_r2 = 1.0 - (1.0 - r2) * (n - 1.0) / (n - p - 1.0);
  return fit;
}

Eigen::MatrixXd model_matrix(const Eigen::MatrixXd& x, bool quadratic,
                             bool interactions) {
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  Eigen::Index cols = 1 + d;
  if (quadratic) cols += d;
  if (interactions) cols += d * (d - 1) / 2;
  Eigen::MatrixXd m(n, cols);
  m.col(0).setOnes();
  m.block(0, 1, n, d) = x;
  Eigen::Index c = 1 + d;
  if (quadratic)
    for (Eigen::Index j = 0; j < d; ++j) m.col(c++) = x.col(j).array().square();
  if (interactions)
    for (Eigen::Index a = 0; a < d; ++a)
      for (Eigen::Index b = a + 1; b < d; ++b)
        m.col(c++) = x.col(a).array() * x.col(b).array();
  return m;
}

// Eigenvalue shares (descending) of the covariance or correlation matrix of
// `data` columns. Negative rounding noise is clamped at zero.
std::vector<double> variance_shares(const Eigen::MatrixXd& data,
                                    bool correlation) {
  const Eigen::Index n = data.rows();
  const Eigen::MatrixXd centered = data.rowwise() - data.colwise().mean();
  Eigen::MatrixXd scaled = centered;
  if (correlation) {
    for (Eigen::Index j = 0; j < data.cols(); ++j) {
      const double sd = std::sqrt(centered.col(j).squaredNorm() /
                                  static_cast<double>(n - 1));
      if (sd <= 0.0)
        throw DegenerateError("pca: constant column under correlation mode");
      scaled.col(j) /= sd;
    }
  }
  const Eigen::MatrixXd cov =
      scaled.transpose() * scaled / static_cast<double>(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  std::vector<double> shares(solver.eigenvalues().size());
  double total = 0.0;
  for (std::size_t i = 0; i < shares.size(); ++i) {
    shares[i] = std::max(solver.eigenvalues()[static_cast<Eigen::Index>(i)], 0.0);
    total += shares[i];
  }
  if (total <= 0.0) throw DegenerateError("pca: zero total variance");
  for (double& s : shares) s /= total;
  std::sort(shares.begin(), shares.end(), std::greater<>());
  return shares;
}

double components_to_cover(const std::vector<double>& shares, double target) {
  double cumulative = 0.0;
  for (std::size_t i = 0; i < shares.size(); ++i) {
    cumulative += shares[i];
    if (cumulative >= target - 1e-12)
      return static_cast<double>(i + 1) / static_cast<double>(shares.size());
  }
  return 1.0;
}

}  // namespace

double FeatureSet::at(const std::string& name) const {
  for (const auto& [n, v] : values)
    if (n == name) return v;
  throw DomainError("no such feature: " + name);
}

void FeatureSet::append(const FeatureSet& other) {
  values.insert(values.end(), other.values.begin(), other.values.end());
  degenerate.insert(degenerate.end(), other.degenerate.begin(),
                    other.degenerate.end());
}

FeatureSet dispersion_features(const Design& design,
                               std::span<const double> quantiles) {
  check_design(design, 2, "disp");
  const std::size_t n = design.size();
  const auto order = order_by_fitness(design.values);

  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  auto full = pairwise_distances(design, all);
  std::sort(full.begin(), full.end());
  const double full_mean = stats::mean(full);
  const double full_median = quantile_sorted(full, 0.5);

  FeatureSet mean_ratio, median_ratio, mean_diff, median_diff;
  for (const double q : quantiles) {
    const auto m = static_cast<std::size_t>(
        std::ceil(q * static_cast<double>(n)));
    if (m < 2)
      throw FeatureError("disp: quantile " + quantile_suffix(q) +
                         " selects fewer than 2 points");
    const std::span<const std::size_t> subset(order.data(), m);
    auto sub = pairwise_distances(design, subset);
    std::sort(sub.begin(), sub.end());
    const double sub_mean = stats::mean(sub);
    const double sub_median = quantile_sorted(sub, 0.5);
    const std::string sfx = quantile_suffix(q);
    mean_ratio.values.emplace_back("disp.ratio_mean_" + sfx,
                                   sub_mean / std::max(full_mean, kRatioGuard));
    median_ratio.values.emplace_back(
        "disp.ratio_median_" + sfx,
        sub_median / std::max(full_median, kRatioGuard));
    mean_diff.values.emplace_back("disp.diff_mean_" + sfx,
                                  sub_mean - full_mean);
    median_diff.values.emplace_back("disp.diff_median_" + sfx,
                                    sub_median - full_median);
  }

  FeatureSet out = std::move(mean_ratio);
  out.append(median_ratio);
  out.append(mean_diff);
  out.append(median_diff);
  return out;
}

FeatureSet ydist_features(std::span<const double> values) {
  if (values.size() < 4)
    throw DomainError("ela_distr: needs at least 4 values");

  const double n = static_cast<double>(values.size());
  const double m = stats::mean(values);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : values) {
    const double d = v - m;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;

  FeatureSet out;
  if (m2 <= 0.0) {
    out.values.emplace_back("ela_distr.skewness", 0.0);
    out.values.emplace_back("ela_distr.kurtosis", 0.0);
    out.values.emplace_back("ela_distr.number_of_peaks", 1.0);
    out.degenerate = {"ela_distr.skewness", "ela_distr.kurtosis"};
    return out;
  }

  const double skewness = m3 / std::pow(m2, 1.5);
  const double kurtosis = m4 / (m2 * m2) - 3.0;

  // Peak count of a Gaussian KDE: Silverman bandwidth, 512-point grid
  // stretched 3 bandwidths past the data range.
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double sd = stats::sample_sd(values);
  const double iqr =
      quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  double spread = sd;
  if (iqr > 0.0) spread = std::min(sd, iqr / 1.34);
  const double bandwidth = 0.9 * spread * std::pow(n, -0.2);

  constexpr int kGrid = 512;
  const double lo = sorted.front() - 3.0 * bandwidth;
  const double hi = sorted.back() + 3.0 * bandwidth;
  std::vector<double> density(kGrid, 0.0);
  for (int g = 0; g < kGrid; ++g) {
    const double x = lo + (hi - lo) * static_cast<double>(g) /
                              static_cast<double>(kGrid - 1);
    double acc = 0.0;
    for (double v : values) acc += stats::normal_pdf((x - v) / bandwidth);
    density[g] = acc / (n * bandwidth);
  }
  int peaks = 0;
  for (int g = 1; g + 1 < kGrid; ++g)
    if (density[g - 1] < density[g] && density[g] > density[g + 1]) ++peaks;
  if (peaks == 0) peaks = 1;

  out.values.emplace_back("ela_distr.skewness", skewness);
  out.values.emplace_back("ela_distr.kurtosis", kurtosis);
  out.values.emplace_back("ela_distr.number_of_peaks",
                          static_cast<double>(peaks));
  return out;
}

FeatureSet metamodel_features(const Design& design) {
  const std::size_t d = design.dim();
  const std::size_t largest = 1 + 2 * d + d * (d - 1) / 2;
  check_design(design, largest + 1, "ela_meta");

  const Eigen::MatrixXd x = points_matrix(design);
  const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(
      design.values.data(), static_cast<Eigen::Index>(design.values.size()));

  const FitSummary lin = fit_model(model_matrix(x, false, false), y);
  const FitSummary lin_i = fit_model(model_matrix(x, false, true), y);
  const FitSummary quad = fit_model(model_matrix(x, true, false), y);
  const FitSummary quad_i = fit_model(model_matrix(x, true, true), y);

  double coef_min = std::numeric_limits<double>::infinity();
  double coef_max = 0.0;
  for (std::size_t j = 1; j <= d; ++j) {
    const double c = std::fabs(lin.coefficients[static_cast<Eigen::Index>(j)]);
    coef_min = std::min(coef_min, c);
    coef_max = std::max(coef_max, c);
  }

  double quad_min = std::numeric_limits<double>::infinity();
  double quad_max = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double c =
        std::fabs(quad.coefficients[static_cast<Eigen::Index>(1 + d + j)]);
    quad_min = std::min(quad_min, c);
    quad_max = std::max(quad_max, c);
  }

  FeatureSet out;
  out.values.emplace_back("ela_meta.lin_simple.adj_r2", lin.adj_r2);
  out.values.emplace_back("ela_meta.lin_simple.intercept", lin.coefficients[0]);
  out.values.emplace_back("ela_meta.lin_simple.coef.min", coef_min);
  out.values.emplace_back("ela_meta.lin_simple.coef.max", coef_max);
  out.values.emplace_back("ela_meta.lin_simple.coef.max_by_min",
                          coef_max / std::max(coef_min, kRatioGuard));
  out.values.emplace_back("ela_meta.lin_w_interact.adj_r2", lin_i.adj_r2);
  out.values.emplace_back("ela_meta.quad_simple.adj_r2", quad.adj_r2);
  out.values.emplace_back("ela_meta.quad_simple.cond",
                          quad_max / std::max(quad_min, kRatioGuard));
  out.values.emplace_back("ela_meta.quad_w_interact.adj_r2", quad_i.adj_r2);
  return out;
}

FeatureSet pca_features(const Design& design) {
  check_design(design, 2, "pca");
  const Eigen::MatrixXd x = points_matrix(design);
  Eigen::MatrixXd xy(x.rows(), x.cols() + 1);
  xy.leftCols(x.cols()) = x;
  xy.col(x.cols()) = Eigen::Map<const Eigen::VectorXd>(
      design.values.data(), static_cast<Eigen::Index>(design.values.size()));

  const auto cov_x = variance_shares(x, false);
  const auto cor_x = variance_shares(x, true);
  const auto cov_init = variance_shares(xy, false);
  const auto cor_init = variance_shares(xy, true);

  FeatureSet out;
  out.values.emplace_back("pca.expl_var.cov_x", components_to_cover(cov_x, 0.9));
  out.values.emplace_back("pca.expl_var.cor_x", components_to_cover(cor_x, 0.9));
  out.values.emplace_back("pca.expl_var.cov_init",
                          components_to_cover(cov_init, 0.9));
  out.values.emplace_back("pca.expl_var.cor_init",
                          components_to_cover(cor_init, 0.9));
  out.values.emplace_back("pca.expl_var_PC1.cov_x", cov_x.front());
  out.values.emplace_back("pca.expl_var_PC1.cor_x", cor_x.front());
  out.values.emplace_back("pca.expl_var_PC1.cov_init", cov_init.front());
  out.values.emplace_back("pca.expl_var_PC1.cor_init", cor_init.front());
  return out;
}

FeatureSet nbc_features(const Design& design) {
  check_design(design, 3, "nbc");
  const std::size_t n = design.size();
  const auto& y = design.values;
  if (std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; }))
    throw DegenerateError("nbc: all fitness values equal");

  std::vector<double> nn_dist(n, std::numeric_limits<double>::infinity());
  std::vector<double> nb_dist(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> nb_neighbor(n, n);
  std::vector<double> nb_count(n, 0.0);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double dist = distance(design.point(i), design.point(j));
      nn_dist[i] = std::min(nn_dist[i], dist);
      if (y[j] < y[i] && (dist < nb_dist[i] ||
                          (dist == nb_dist[i] && j < nb_neighbor[i]))) {
        nb_dist[i] = dist;
        nb_neighbor[i] = j;
      }
    }
  }

  // Points with no strictly better point (the global best under ties) take
  // the maximum of the others' nearest-better distances.
  double max_nb = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (std::isfinite(nb_dist[i])) max_nb = std::max(max_nb, nb_dist[i]);
  for (std::size_t i = 0; i < n; ++i)
    if (!std::isfinite(nb_dist[i])) nb_dist[i] = max_nb;

  for (std::size_t i = 0; i < n; ++i)
    if (nb_neighbor[i] < n) nb_count[nb_neighbor[i]] += 1.0;

  const double nn_mean = stats::mean(nn_dist);
  const double nb_mean = stats::mean(nb_dist);
  const double nn_sd = stats::sample_sd(nn_dist);
  const double nb_sd = stats::sample_sd(nb_dist);

  FeatureSet out;
  out.values.emplace_back("nbc.nn_nb.sd_ratio",
                          nn_sd / std::max(nb_sd, kRatioGuard));
  out.values.emplace_back("nbc.nn_nb.mean_ratio",
                          nn_mean / std::max(nb_mean, kRatioGuard));
  out.values.emplace_back("nbc.nn_nb.cor", stats::pearson(nn_dist, nb_dist));
  out.values.emplace_back("nbc.dist_ratio.coeff_var",
                          nb_sd / std::max(nb_mean, kRatioGuard));
  out.values.emplace_back("nbc.nb_fitness.cor", stats::pearson(y, nb_count));
  return out;
}

std::vector<double> default_eps_grid() {
  std::vector<double> grid;
  grid.reserve(1001);
  grid.push_back(0.0);
  constexpr int kPoints = 1000;
  for (int i = 0; i < kPoints; ++i) {
    const double exponent =
        -5.0 + 20.0 * static_cast<double>(i) / static_cast<double>(kPoints - 1);
    grid.push_back(std::pow(10.0, exponent));
  }
  return grid;
}

FeatureSet ic_features(const Design& design, std::span<const double> eps_grid,
                       std::uint64_t seed) {
  check_design(design, 3, "ic");
  const std::size_t n = design.size();

  // Greedy nearest-unvisited tour from a seeded random start; nearest ties
  // break to the lowest index.
  Rng rng(seed);
  std::vector<bool> visited(n, false);
  std::size_t current = static_cast<std::size_t>(rng.below(n));
  visited[current] = true;
  std::vector<std::size_t> tour{current};
  tour.reserve(n);
  for (std::size_t step = 1; step < n; ++step) {
    double best_sq = std::numeric_limits<double>::infinity();
    std::size_t best = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (visited[j]) continue;
      const double sq = sq_distance(design.point(current), design.point(j));
      if (sq < best_sq) {
        best_sq = sq;
        best = j;
      }
    }
    visited[best] = true;
    tour.push_back(best);
    current = best;
  }

  std::vector<double> deltas(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i)
    deltas[i] = design.values[tour[i + 1]] - design.values[tour[i]];

  const auto symbols_at = [&](double eps, std::vector<int>& symbols) {
    symbols.resize(deltas.size());
    for (std::size_t i = 0; i < deltas.size(); ++i)
      symbols[i] = deltas[i] > eps ? 1 : (deltas[i] < -eps ? -1 : 0);
  };

  // H(eps): entropy (base 6) over the six unequal consecutive-symbol pairs.
  const auto entropy_of = [&](const std::vector<int>& symbols) {
    if (symbols.size() < 2) return 0.0;
    double counts[3][3] = {};
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i)
      counts[symbols[i] + 1][symbols[i + 1] + 1] += 1.0;
    const double total = static_cast<double>(symbols.size() - 1);
    double h = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        if (a == b) continue;
        const double p = counts[a][b] / total;
        if (p > 0.0) h -= p * std::log(p) / std::log(6.0);
      }
    return h;
  };

  // M(eps): sign alternations in the zero-stripped sequence over (n-1).
  const auto partial_information_of = [&](const std::vector<int>& symbols) {
    int previous = 0;
    double alternations = 0.0;
    for (const int s : symbols) {
      if (s == 0) continue;
      if (previous != 0 && s != previous) alternations += 1.0;
      previous = s;
    }
    return alternations / static_cast<double>(n - 1);
  };

  std::vector<int> symbols;
  symbols_at(0.0, symbols);
  const double m0 = partial_information_of(symbols);

  double h_max = 0.0;
  double eps_max = eps_grid.empty() ? 0.0 : eps_grid.front();
  double eps_s = std::numeric_limits<double>::quiet_NaN();
  double eps_ratio = 0.0;
  for (const double eps : eps_grid) {
    symbols_at(eps, symbols);
    const double h = entropy_of(symbols);
    if (h > h_max) {
      h_max = h;
      eps_max = eps;
    }
    if (std::isnan(eps_s) && h < 0.05) eps_s = eps;
    if (m0 > 0.0 && partial_information_of(symbols) >= 0.5 * m0)
      eps_ratio = std::max(eps_ratio, eps);
  }
  if (std::isnan(eps_s))
    eps_s = eps_grid.empty() ? 0.0 : eps_grid.back();

  FeatureSet out;
  out.values.emplace_back("ic.h.max", h_max);
  out.values.emplace_back("ic.eps.s", eps_s);
  out.values.emplace_back("ic.eps.max", eps_max);
  out.values.emplace_back("ic.eps.ratio", eps_ratio);
  out.values.emplace_back("ic.m0", m0);
  return out;
}

FeatureSet compute_all_features(const Design& design, std::uint64_t seed) {
  const auto grid = default_eps_grid();
  FeatureSet out = dispersion_features(design);
  out.append(ydist_features(design.values));
  out.append(metamodel_features(design));
  out.append(pca_features(design));
  out.append(nbc_features(design));
  out.append(ic_features(design, grid, seed));
  return out;
}

ExtractionResult extract_features(const std::vector<InstanceSource>& instances,
                                  const ExtractionConfig& config,
                                  std::uint64_t master_seed) {
  if (config.repetitions < 1)
    throw DomainError("extract_features: repetitions must be >= 1");

  struct RowResult {
    bool ok = false;
    std::vector<std::string> names;
    std::vector<double> values;
    std::string diagnostic;
  };
  std::vector<RowResult> rows(instances.size());

  parallel_for(instances.size(), [&](std::size_t idx) {
    const InstanceSource& source = instances[idx];
    RowResult& row = rows[idx];
    try {
      const std::size_t n = config.samples_per_dim * source.bounds.size();
      std::vector<FeatureTable> reps;
      reps.reserve(static_cast<std::size_t>(config.repetitions));
      for (int rep = 0; rep < config.repetitions; ++rep) {
        const std::uint64_t task_seed = derive_seed(
            master_seed, idx, static_cast<std::uint64_t>(rep));
        Design design = improved_lhs(n, source.bounds.size(), source.bounds,
                                     task_seed, config.lhs_candidates);
        design.values.resize(design.size());
        for (std::size_t i = 0; i < design.size(); ++i)
          design.values[i] = source.evaluate(design.point(i));

        const FeatureSet features = compute_all_features(
            design, derive_seed(task_seed, 0x1C));
        if (!features.degenerate.empty())
          throw DegenerateError("degenerate feature(s): " +
                                features.degenerate.front());

        std::vector<std::string> names;
        std::vector<double> values;
        for (const auto& [name, value] : features.values) {
          if (!std::isfinite(value))
            throw FeatureError("non-finite feature value: " + name);
          names.push_back(name);
          values.push_back(value);
        }
        reps.push_back(
            FeatureTable({source.key}, std::move(names), std::move(values)));
      }
      const FeatureTable aggregated = median_aggregate(reps);
      row.names = aggregated.feature_names();
      row.values.assign(aggregated.values().begin(),
                        aggregated.values().end());
      row.ok = true;
    } catch (const Error& e) {
      row.diagnostic = source.key.to_string() + ": " + e.what();
    }
  });

  ExtractionResult result;
  std::vector<InstanceKey> keys;
  std::vector<std::string> names;
  std::vector<double> values;
  for (std::size_t idx = 0; idx < instances.size(); ++idx) {
    const RowResult& row = rows[idx];
    if (!row.ok) {
      result.failures.push_back(row.diagnostic);
      continue;
    }
    if (names.empty()) names = row.names;
    keys.push_back(instances[idx].key);
    values.insert(values.end(), row.values.begin(), row.values.end());
  }
  FeatureTable table(std::move(keys), std::move(names), std::move(values));
  if (!config.drop_columns.empty() && table.cols() > 0)
    table = table.drop_columns(config.drop_columns);
  result.table = std::move(table);
  return result;
}

}  // namespace benchsel::ela

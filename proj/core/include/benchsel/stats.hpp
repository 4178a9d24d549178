#pragma once

#include <span>

namespace benchsel::stats {

double normal_pdf(double x);
double normal_cdf(double x);

/// Upper tail of the chi-square distribution with dof degrees of freedom,
/// i.e. the regularized upper incomplete gamma Q(dof/2, x/2). Series for
/// small x, Lentz continued fraction otherwise.
double chi_square_sf(double x, double dof);

/// Kolmogorov limit distribution survival Q(lambda) =
/// 2 * sum_{i>=1} (-1)^{i-1} exp(-2 i^2 lambda^2); theta-transformed series
/// below lambda ~ 1.18 where the direct series converges slowly.
double kolmogorov_sf(double lambda);

/// CDF of the studentized range with k groups and infinite degrees of
/// freedom: k * integral phi(z) [Phi(z) - Phi(z-q)]^{k-1} dz, evaluated by
/// adaptive quadrature over z in [-8, 8+q] to absolute error <= 1e-8.
double studentized_range_cdf(double q, int k);
double studentized_range_sf(double q, int k);

struct KsResult {
  double statistic = 0.0;  // D = sup |ECDF_a - ECDF_b|
  double p_value = 1.0;    // asymptotic, via the Kolmogorov series
};

/// Two-sample Kolmogorov-Smirnov test with the small-sample continuity
/// correction lambda = (sqrt(n_e) + 0.12 + 0.11/sqrt(n_e)) * D,
/// n_e = |a||b| / (|a|+|b|). Requires |a| >= 2 and |b| >= 2.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

double mean(std::span<const double> xs);
/// Sample standard deviation (n-1 divisor); 0 when fewer than 2 values.
double sample_sd(std::span<const double> xs);
/// Pearson correlation; 0 when either side has zero variance.
double pearson(std::span<const double> xs, std::span<const double> ys);
/// Median of a copy of the data.
double median(std::span<const double> xs);

}  // namespace benchsel::stats

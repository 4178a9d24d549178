#pragma once

// Independent test oracles. These deliberately avoid the library's own code
// paths: least squares goes through an explicit normal-equations
// pseudo-inverse, PCA through power iteration, graph optima through
// exhaustive bitmask enumeration, distribution tails through direct
// quadrature or Monte-Carlo sampling.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "benchsel/rng.hpp"

namespace oracle {

// ---- elementary statistics --------------------------------------------------

inline double mean(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

inline double median_sorted_copy(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

// ---- brute-force pairwise distances ----------------------------------------

inline std::vector<double> pairwise_distances(
    const std::vector<std::vector<double>>& points) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      double sq = 0.0;
      for (std::size_t k = 0; k < points[i].size(); ++k) {
        const double d = points[i][k] - points[j][k];
        sq += d * d;
      }
      out.push_back(std::sqrt(sq));
    }
  return out;
}

// ---- least squares by explicit pseudo-inverse -------------------------------

// Gauss-Jordan inverse; the model matrices in tests are tiny and well
// conditioned.
inline std::vector<std::vector<double>> invert(
    std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    std::swap(a[col], a[pivot]);
    std::swap(inv[col], inv[pivot]);
    const double diag = a[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      a[col][c] /= diag;
      inv[col][c] /= diag;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double factor = a[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        a[r][c] -= factor * a[col][c];
        inv[r][c] -= factor * inv[col][c];
      }
    }
  }
  return inv;
}

// beta = (X^T X)^-1 X^T y
inline std::vector<double> least_squares(
    const std::vector<std::vector<double>>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  const std::size_t p = x[0].size();
  std::vector<std::vector<double>> xtx(p, std::vector<double>(p, 0.0));
  std::vector<double> xty(p, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < p; ++a) {
      xty[a] += x[i][a] * y[i];
      for (std::size_t b = 0; b < p; ++b) xtx[a][b] += x[i][a] * x[i][b];
    }
  const auto inv = invert(xtx);
  std::vector<double> beta(p, 0.0);
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < p; ++b) beta[a] += inv[a][b] * xty[b];
  return beta;
}

inline double adjusted_r2(const std::vector<std::vector<double>>& x,
                          const std::vector<double>& y,
                          const std::vector<double>& beta) {
  const double ybar = mean(y);
  double rss = 0.0, tss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double fit = 0.0;
    for (std::size_t a = 0; a < beta.size(); ++a) fit += x[i][a] * beta[a];
    rss += (y[i] - fit) * (y[i] - fit);
    tss += (y[i] - ybar) * (y[i] - ybar);
  }
  const double n = static_cast<double>(x.size());
  const double p = static_cast<double>(beta.size() - 1);
  const double r2 = 1.0 - rss / tss;
  return 1.0 - (1.0 - r2) * (n - 1.0) / (n - p - 1.0);
}

// ---- PCA via power iteration -------------------------------------------------

// All eigenvalues of a small symmetric PSD matrix by power iteration with
// deflation.
inline std::vector<double> eigenvalues_power_iteration(
    std::vector<std::vector<double>> m) {
  const std::size_t d = m.size();
  std::vector<double> eigenvalues;
  benchsel::Rng rng(12345);
  for (std::size_t round = 0; round < d; ++round) {
    std::vector<double> v(d);
    for (double& c : v) c = rng.uniform() - 0.5;
    double lambda = 0.0;
    for (int iter = 0; iter < 5000; ++iter) {
      std::vector<double> next(d, 0.0);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) next[i] += m[i][j] * v[j];
      double norm = 0.0;
      for (double c : next) norm += c * c;
      norm = std::sqrt(norm);
      if (norm < 1e-14) {
        lambda = 0.0;
        break;
      }
      for (double& c : next) c /= norm;
      lambda = 0.0;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) lambda += next[i] * m[i][j] * next[j];
      v = next;
    }
    eigenvalues.push_back(std::max(lambda, 0.0));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m[i][j] -= lambda * v[i] * v[j];
  }
  std::sort(eigenvalues.begin(), eigenvalues.end(), std::greater<>());
  return eigenvalues;
}

inline std::vector<std::vector<double>> covariance_matrix(
    const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  const std::size_t d = rows[0].size();
  std::vector<double> mu(d, 0.0);
  for (const auto& row : rows)
    for (std::size_t j = 0; j < d; ++j) mu[j] += row[j];
  for (double& m : mu) m /= static_cast<double>(n);
  std::vector<std::vector<double>> cov(d, std::vector<double>(d, 0.0));
  for (const auto& row : rows)
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b)
        cov[a][b] += (row[a] - mu[a]) * (row[b] - mu[b]);
  for (auto& r : cov)
    for (double& c : r) c /= static_cast<double>(n - 1);
  return cov;
}

// ---- exhaustive graph optima (n <= ~20) --------------------------------------

struct TestGraph {
  std::size_t n = 0;
  std::vector<std::uint32_t> adjacency;  // bitmask per node, no self bits
};

inline bool is_independent(const TestGraph& g, std::uint32_t set) {
  for (std::size_t v = 0; v < g.n; ++v)
    if ((set >> v) & 1u)
      if (g.adjacency[v] & set) return false;
  return true;
}

inline bool is_dominating(const TestGraph& g, std::uint32_t set) {
  for (std::size_t v = 0; v < g.n; ++v) {
    const std::uint32_t closed = g.adjacency[v] | (1u << v);
    if (!(closed & set)) return false;
  }
  return true;
}

inline bool is_maximal_independent(const TestGraph& g, std::uint32_t set) {
  if (!is_independent(g, set)) return false;
  for (std::size_t v = 0; v < g.n; ++v) {
    if ((set >> v) & 1u) continue;
    if (!(g.adjacency[v] & set)) return false;  // v could still be added
  }
  return true;
}

inline int popcount(std::uint32_t x) { return __builtin_popcount(x); }

inline int minimum_dominating_set_size(const TestGraph& g) {
  int best = static_cast<int>(g.n);
  for (std::uint32_t set = 1; set < (1u << g.n); ++set)
    if (is_dominating(g, set)) best = std::min(best, popcount(set));
  return best;
}

inline int maximum_independent_set_size(const TestGraph& g) {
  int best = 0;
  for (std::uint32_t set = 0; set < (1u << g.n); ++set)
    if (is_independent(g, set)) best = std::max(best, popcount(set));
  return best;
}

inline int minimum_maximal_independent_set_size(const TestGraph& g) {
  int best = static_cast<int>(g.n);
  for (std::uint32_t set = 0; set < (1u << g.n); ++set)
    if (is_maximal_independent(g, set)) best = std::min(best, popcount(set));
  return best;
}

// ---- distribution tails ------------------------------------------------------

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / 1.4142135623730951); }

// Chi-square upper tail by direct Simpson quadrature of the density over
// [x, x + 60 + 10 dof] (the tail beyond is negligible at the tolerances used).
inline double chi_square_sf_quadrature(double x, double dof) {
  if (x <= 0.0) return 1.0;
  const double hi = x + 60.0 + 10.0 * dof;
  const int steps = 20000;  // even
  const double h = (hi - x) / steps;
  const auto pdf = [dof](double t) {
    if (t <= 0.0) return 0.0;
    const double a = 0.5 * dof;
    return std::exp((a - 1.0) * std::log(t) - 0.5 * t - a * std::log(2.0) -
                    std::lgamma(a));
  };
  double sum = pdf(x) + pdf(hi);
  for (int i = 1; i < steps; ++i)
    sum += pdf(x + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

// Monte-Carlo upper tail of chi-square with integer dof.
inline double chi_square_sf_monte_carlo(double x, int dof, std::size_t samples,
                                        std::uint64_t seed) {
  benchsel::Rng rng(seed);
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    double acc = 0.0;
    for (int k = 0; k < dof; ++k) {
      const double z = rng.normal();
      acc += z * z;
    }
    if (acc > x) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

// Monte-Carlo upper tail of the studentized range (infinite dof): range of k
// standard normals.
inline double studentized_range_sf_monte_carlo(double q, int k,
                                               std::size_t samples,
                                               std::uint64_t seed) {
  benchsel::Rng rng(seed);
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i < k; ++i) {
      const double z = rng.normal();
      lo = std::min(lo, z);
      hi = std::max(hi, z);
    }
    if (hi - lo > q) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

}  // namespace oracle

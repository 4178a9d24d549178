#include "benchsel/design.hpp"

#include <cmath>
#include <limits>

#include "benchsel/error.hpp"
#include "benchsel/rng.hpp"

namespace benchsel {

namespace {

// One plain LHS draw on the unit cube: per dimension a random permutation of
// strata, each point jittered uniformly within its stratum.
std::vector<double> unit_lhs(std::size_t n, std::size_t d, Rng& rng) {
  std::vector<double> fractions(n * d);
  for (std::size_t j = 0; j < d; ++j) {
    const auto perm = random_permutation(n, rng);
    for (std::size_t i = 0; i < n; ++i) {
      // Keep the jitter strictly below 1 so the point stays in its stratum.
      const double u = std::min(rng.uniform(), 1.0 - 0x1.0p-53);
      fractions[i * d + j] =
          (static_cast<double>(perm[i]) + u) / static_cast<double>(n);
    }
  }
  return fractions;
}

// Minimum squared pairwise distance, abandoning early once it drops below
// `floor` (the best candidate seen so far cannot be beaten then).
double min_pairwise_sq(const std::vector<double>& pts, std::size_t n,
                       std::size_t d, double floor) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double sq = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double diff = pts[i * d + k] - pts[j * d + k];
        sq += diff * diff;
      }
      if (sq < best) {
        best = sq;
        if (best <= floor) return best;
      }
    }
  }
  return best;
}

}  // namespace

Design improved_lhs(std::size_t n, std::size_t d, const Bounds& bounds,
                    std::uint64_t seed, int candidates) {
  if (n < 1 || d < 1) throw DomainError("improved_lhs: n and d must be >= 1");
  if (bounds.size() != d)
    throw DomainError("improved_lhs: bounds size must equal d");
  for (const auto& [lo, hi] : bounds)
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
      throw DomainError("improved_lhs: bounds must be finite with lower < upper");
  if (candidates < 1) throw DomainError("improved_lhs: candidates must be >= 1");

  Rng rng(seed);
  std::vector<double> best_fractions;
  double best_score = -1.0;
  for (int g = 0; g < candidates; ++g) {
    auto fractions = unit_lhs(n, d, rng);
    const double score =
        n > 1 ? min_pairwise_sq(fractions, n, d, best_score) : 1.0;
    if (score > best_score) {
      best_score = score;
      best_fractions = std::move(fractions);
    }
  }

  Design design;
  design.bounds = bounds;
  design.points.resize(n * d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const auto& [lo, hi] = bounds[j];
      design.points[i * d + j] = lo + (hi - lo) * best_fractions[i * d + j];
    }
  return design;
}

}  // namespace benchsel

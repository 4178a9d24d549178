#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace benchsel {

/// Axis-aligned box bounds, one (lower, upper) pair per dimension.
using Bounds = std::vector<std::pair<double, double>>;

/// A design of sample points with their objective values. Points are stored
/// row-major (n x d); values may be empty until the objective is evaluated.
struct Design {
  std::vector<double> points;
  std::vector<double> values;
  Bounds bounds;

  std::size_t size() const { return bounds.empty() ? 0 : points.size() / dim(); }
  std::size_t dim() const { return bounds.size(); }
  std::span<const double> point(std::size_t i) const {
    return {points.data() + i * dim(), dim()};
  }
};

/// Latin hypercube design improved by maximin selection: among `candidates`
/// plain LHS designs the one maximizing the minimum pairwise Euclidean
/// distance (measured on unit-cube fractions) is kept. Exactly one point per
/// axis stratum in every dimension; deterministic given the seed. Values are
/// left unset.
Design improved_lhs(std::size_t n, std::size_t d, const Bounds& bounds,
                    std::uint64_t seed, int candidates = 50);

}  // namespace benchsel

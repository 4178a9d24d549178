#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "benchsel/design.hpp"
#include "benchsel/error.hpp"

using namespace benchsel;

namespace {

Bounds unit_box(std::size_t d) { return Bounds(d, {0.0, 1.0}); }

// Per-dimension histogram with n equal bins; the Latin property is exactly
// one point per bin in every dimension.
bool has_latin_property(const Design& design) {
  const std::size_t n = design.size();
  for (std::size_t j = 0; j < design.dim(); ++j) {
    const auto& [lo, hi] = design.bounds[j];
    std::vector<int> bins(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const double fraction = (design.point(i)[j] - lo) / (hi - lo);
      const auto bin = std::min<std::size_t>(
          n - 1, static_cast<std::size_t>(fraction * static_cast<double>(n)));
      ++bins[bin];
    }
    for (const int count : bins)
      if (count != 1) return false;
  }
  return true;
}

double min_pairwise_distance(const Design& design) {
  double best = 1e300;
  for (std::size_t i = 0; i + 1 < design.size(); ++i)
    for (std::size_t j = i + 1; j < design.size(); ++j) {
      double sq = 0.0;
      for (std::size_t k = 0; k < design.dim(); ++k) {
        const double d = design.point(i)[k] - design.point(j)[k];
        sq += d * d;
      }
      best = std::min(best, std::sqrt(sq));
    }
  return best;
}

}  // namespace

TEST_SUITE("design") {

TEST_CASE("n = 1: the only point sits inside the sole stratum") {
  for (const std::size_t d : {1u, 3u, 7u}) {
    const Design design = improved_lhs(1, d, unit_box(d), 42);
    CHECK(design.size() == 1);
    for (std::size_t j = 0; j < d; ++j) {
      CHECK(design.point(0)[j] >= 0.0);
      CHECK(design.point(0)[j] < 1.0);
    }
  }
}

TEST_CASE("n = 10, d = 2: exactly one point per bin in each dimension") {
  const Design design = improved_lhs(10, 2, {{-3.0, 5.0}, {0.0, 2.0}}, 7);
  CHECK(has_latin_property(design));
}

TEST_CASE("Latin property holds across n, d, seed") {
  for (const std::uint64_t seed : {1ull, 99ull, 123456789ull})
    for (const std::size_t n : {2u, 5u, 33u})
      for (const std::size_t d : {1u, 4u}) {
        const Design design = improved_lhs(n, d, unit_box(d), seed);
        CHECK(has_latin_property(design));
      }
}

TEST_CASE("n = 8000, d = 10, fixed seed: rerun yields the identical matrix") {
  const Design a = improved_lhs(8000, 10, Bounds(10, {-5.0, 5.0}), 2023);
  const Design b = improved_lhs(8000, 10, Bounds(10, {-5.0, 5.0}), 2023);
  CHECK(a.points == b.points);
  CHECK(has_latin_property(a));
}

TEST_CASE("maximin selection: the chosen design beats single candidates") {
  // With 50 candidates the winner's minimum pairwise distance must be at
  // least that of a 1-candidate draw from the same stream (the first
  // candidate is shared).
  const Design best = improved_lhs(40, 2, unit_box(2), 31, 50);
  const Design first = improved_lhs(40, 2, unit_box(2), 31, 1);
  CHECK(min_pairwise_distance(best) >= min_pairwise_distance(first));
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(improved_lhs(0, 2, unit_box(2), 1), DomainError);
  CHECK_THROWS_AS(improved_lhs(5, 2, {{0.0, 1.0}}, 1), DomainError);
  CHECK_THROWS_AS(
      improved_lhs(5, 1, {{0.0, std::numeric_limits<double>::infinity()}}, 1),
      DomainError);
  CHECK_THROWS_AS(improved_lhs(5, 1, {{1.0, 0.0}}, 1), DomainError);
}

}  // TEST_SUITE

#include <doctest.h>

#include <cmath>
#include <vector>

#include "benchsel/error.hpp"
#include "benchsel/rng.hpp"
#include "benchsel/stats.hpp"
#include "oracles.hpp"

using namespace benchsel;

TEST_SUITE("stats") {

TEST_CASE("ks: identical samples give D = 0, p = 1") {
  const std::vector<double> a{0.3, 1.2, 2.2, 5.0};
  const auto result = stats::ks_two_sample(a, a);
  CHECK(result.statistic == 0.0);
  CHECK(result.p_value == 1.0);
}

TEST_CASE("ks: disjoint supports give D = 1") {
  std::vector<double> a, b;
  Rng rng(4);
  for (int i = 0; i < 12; ++i) {
    a.push_back(rng.uniform());        // [0, 1]
    b.push_back(2.0 + rng.uniform()); // [2, 3]
  }
  const auto result = stats::ks_two_sample(a, b);
  CHECK(result.statistic == 1.0);
  CHECK(result.p_value < 1e-4);
}

TEST_CASE("ks: tiny samples rejected") {
  const std::vector<double> one{1.0};
  const std::vector<double> two{1.0, 2.0};
  CHECK_THROWS_AS(stats::ks_two_sample(one, two), DomainError);
}

TEST_CASE("ks: size under a true null is near alpha at n = 30/30") {
  // 10^4 Monte-Carlo trials; rejection rate at alpha = 0.05 within [3%, 7%].
  Rng rng(20240);
  int rejections = 0;
  const int trials = 10000;
  std::vector<double> a(30), b(30);
  for (int t = 0; t < trials; ++t) {
    for (double& v : a) v = rng.normal();
    for (double& v : b) v = rng.normal();
    if (stats::ks_two_sample(a, b).p_value < 0.05) ++rejections;
  }
  const double rate = static_cast<double>(rejections) / trials;
  CHECK(rate >= 0.03);
  CHECK(rate <= 0.07);
}

TEST_CASE("chi-square tail: dof 2 closed form and quadrature oracle") {
  // dof 2: SF(x) = exp(-x/2).
  for (const double x : {0.5, 2.0, 8.0}) {
    CHECK(stats::chi_square_sf(x, 2) ==
          doctest::Approx(std::exp(-0.5 * x)).epsilon(1e-12));
  }
  for (const double dof : {1.0, 3.0, 5.0, 10.0})
    for (const double x : {0.5, 1.0, 2.0, 4.0, 9.0})
      CHECK(stats::chi_square_sf(x, dof) ==
            doctest::Approx(oracle::chi_square_sf_quadrature(x, dof))
                .epsilon(1e-6));
}

TEST_CASE("kolmogorov survival: series branches agree across the cutoff") {
  // The theta-transform (lambda < 1.18) and direct series must describe one
  // continuous function: frozen 40-digit reference values on both sides.
  CHECK(stats::kolmogorov_sf(1.1799) ==
        doctest::Approx(0.12351204971188678).epsilon(1e-12));
  CHECK(stats::kolmogorov_sf(1.1801) ==
        doctest::Approx(0.12339559161939294).epsilon(1e-12));
  CHECK(stats::kolmogorov_sf(0.0) == 1.0);
  CHECK(stats::kolmogorov_sf(0.5) == doctest::Approx(0.9639).epsilon(1e-3));
  CHECK(stats::kolmogorov_sf(1.0) == doctest::Approx(0.26999967).epsilon(1e-6));
  CHECK(stats::kolmogorov_sf(2.0) == doctest::Approx(0.00067092).epsilon(1e-4));
}

TEST_CASE("studentized range: k = 2 closed form 2*Phi(q/sqrt(2)) - 1") {
  for (const double q : {0.5, 1.0, 2.0, 3.0, 4.0}) {
    const double closed = 2.0 * oracle::normal_cdf(q / std::sqrt(2.0)) - 1.0;
    CHECK(stats::studentized_range_cdf(q, 2) ==
          doctest::Approx(closed).epsilon(1e-6));
  }
}

TEST_CASE("studentized range: Monte-Carlo oracle at k = 3") {
  // 10^7-sample estimate of the range of k standard normals, within 0.005.
  const double p = stats::studentized_range_sf(3.0, 3);
  const double mc = oracle::studentized_range_sf_monte_carlo(3.0, 3, 10000000, 5150);
  CHECK(std::fabs(p - mc) < 0.005);
}

TEST_CASE("studentized range: tabulated critical point sanity") {
  // q_{0.05}(k=3, inf dof) = 3.314 in standard tables.
  CHECK(stats::studentized_range_sf(3.314, 3) ==
        doctest::Approx(0.05).epsilon(0.01));
  CHECK(stats::studentized_range_sf(0.0, 3) == 1.0);
  CHECK(stats::studentized_range_cdf(-1.0, 3) == 0.0);
}

TEST_CASE("descriptive helpers") {
  const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  CHECK(stats::mean(xs) == 2.5);
  CHECK(stats::median(xs) == 2.5);
  CHECK(stats::sample_sd(xs) ==
        doctest::Approx(std::sqrt(5.0 / 3.0)).epsilon(1e-12));
  const std::vector<double> ys{2.0, 4.0, 6.0, 8.0};
  CHECK(stats::pearson(xs, ys) == doctest::Approx(1.0).epsilon(1e-12));
  const std::vector<double> flat{1.0, 1.0, 1.0, 1.0};
  CHECK(stats::pearson(xs, flat) == 0.0);
}

}  // TEST_SUITE

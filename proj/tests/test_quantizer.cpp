#include <random>
#include <stdexcept>

#include "dcps/quantizer.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace dcps;

TEST_CASE("k=1 on identical values: single centroid, zero inertia") {
  auto [q, inertia] = fit_kmeans({5, 5, 5}, 1, 0);
  CHECK(q.centroids == std::vector<double>{5.0});
  CHECK(inertia == doctest::Approx(0.0));
}

TEST_CASE("three well-separated pairs split exactly") {
  auto [q, inertia] = fit_kmeans({1, 2, 10, 11, 20, 21}, 3, 0, 50);
  REQUIRE(q.centroids.size() == 3);
  CHECK(q.centroids[0] == doctest::Approx(1.5));
  CHECK(q.centroids[1] == doctest::Approx(10.5));
  CHECK(q.centroids[2] == doctest::Approx(20.5));
  CHECK(inertia == doctest::Approx(1.5));
}

TEST_CASE("k equal to distinct count gives zero inertia") {
  auto [q, inertia] = fit_kmeans({3, 1, 2, 2, 3}, 3, 9, 10);
  CHECK(q.centroids == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(inertia == doctest::Approx(0.0));
}

TEST_CASE("input errors") {
  CHECK_THROWS_AS(fit_kmeans({}, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(fit_kmeans({1, 1, 1}, 2, 0), std::invalid_argument);
}

TEST_CASE("best-of-restarts reaches the contiguous-partition optimum") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unif(0.0, 100.0);
  std::uniform_int_distribution<int> n_values(4, 12);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> values(n_values(rng));
    for (double& v : values) v = unif(rng);
    for (int k = 1; k <= 4; ++k) {
      const double optimum = oracle::optimal_contiguous_inertia(values, k);
      const double got = fit_kmeans(values, k, trial, 50).inertia;
      CHECK(got <= optimum + 1e-9);
      CHECK(got >= optimum - 1e-9);  // cannot beat the true optimum either
    }
  }
}

TEST_CASE("quantize: exact centroids, midpoint tie to lower index") {
  Quantizer q{{10.0, 20.0, 40.0}};
  CHECK(quantize(q, 10.0) == 0);
  CHECK(quantize(q, 20.0) == 1);
  CHECK(quantize(q, 40.0) == 2);
  CHECK(quantize(q, 15.0) == 0);  // midpoint -> lower
  CHECK(quantize(q, 30.0) == 1);
  CHECK(quantize(q, -1e6) == 0);
  CHECK(quantize(q, 1e6) == 2);
}

TEST_CASE("quantize is monotone non-decreasing") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unif(-50.0, 150.0);
  Quantizer q{{0.0, 30.0, 55.0, 100.0}};
  for (int trial = 0; trial < 500; ++trial) {
    double a = unif(rng), b = unif(rng);
    if (a > b) std::swap(a, b);
    CHECK(quantize(q, a) <= quantize(q, b));
  }
}

TEST_CASE("refit with same seed reproduces centroids") {
  std::vector<double> values = {4.2, 9.9, 1.1, 77.0, 42.0, 41.0, 3.3};
  auto a = fit_kmeans(values, 3, 1234, 20);
  auto b = fit_kmeans(values, 3, 1234, 20);
  CHECK(a.quantizer.centroids == b.quantizer.centroids);
  CHECK(a.inertia == b.inertia);
}

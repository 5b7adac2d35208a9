#include <cmath>
#include <random>

#include "dcps/validator.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace dcps;

namespace {

// Profile over a hand-built model; window all zeros.
Profile identical_symbol_profile(double threshold) {
  Profile p;
  p.model.n_states = 1;
  p.model.n_symbols = 2;
  p.model.transition = {{1.0}};
  p.model.emission = {{0.9, 0.1}};
  p.model.initial = {1.0};
  p.quantizer.centroids = {10.0, 100.0};
  p.window_length = 5;
  p.window.assign(5, 0);
  p.threshold = threshold;
  return p;
}

std::vector<double> low_history(std::size_t n, std::uint64_t seed) {
  // mostly near 10, occasional 50 / 100 so k=3 is fittable
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> low(5.0, 15.0);
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 40 == 17) out.push_back(50.0 + low(rng));
    else if (i % 97 == 3) out.push_back(100.0 + low(rng));
    else out.push_back(low(rng));
  }
  return out;
}

}  // namespace

TEST_CASE("identical window plus identical value: delta 0, accepted") {
  auto profile = identical_symbol_profile(0.5);
  auto [verdict, next] = validate_next(profile, 10.0);
  CHECK(verdict.symbol == 0);
  CHECK(verdict.delta_rel == doctest::Approx(0.0));
  CHECK(verdict.accepted);
  CHECK(next.window == profile.window);
}

TEST_CASE("threshold 1 accepts every finite-likelihood value") {
  auto profile = identical_symbol_profile(1.0);
  for (double v : {10.0, 100.0, 55.0, -3.0}) {
    auto [verdict, next] = validate_next(profile, v);
    CHECK(verdict.accepted);
    profile = next;
  }
}

TEST_CASE("rejection leaves the profile unchanged and is idempotent") {
  auto profile = identical_symbol_profile(0.05);
  // symbol 1 has emission 0.1 vs 0.9: large relative drop
  auto [v1, p1] = validate_next(profile, 100.0);
  CHECK_FALSE(v1.accepted);
  CHECK(p1.window == profile.window);
  auto [v2, p2] = validate_next(p1, 100.0);
  CHECK_FALSE(v2.accepted);
  CHECK(v2.alpha1 == v1.alpha1);
  CHECK(v2.alpha2 == v1.alpha2);
  CHECK(v2.delta_rel == v1.delta_rel);
  CHECK(p2.window == p1.window);
}

TEST_CASE("impossible incoming symbol is rejected with maximal drop") {
  auto profile = identical_symbol_profile(0.5);
  profile.model.emission = {{1.0, 0.0}};
  auto [verdict, next] = validate_next(profile, 100.0);
  CHECK_FALSE(verdict.accepted);
  CHECK(std::isinf(verdict.delta_rel));
  CHECK(next.window == profile.window);
}

TEST_CASE("impossible stored window accepts and resynchronizes") {
  auto profile = identical_symbol_profile(0.0);
  profile.model.emission = {{0.0, 1.0}};  // window of 0s now impossible
  auto [verdict, next] = validate_next(profile, 100.0);
  CHECK(verdict.accepted);
  CHECK(std::isinf(verdict.alpha1));
  CHECK(next.window.back() == 1);
  CHECK(next.window.size() == profile.window.size());
}

TEST_CASE("delta <= 0 always accepted for any non-negative threshold") {
  // make the shifted window strictly more likely than the stored one
  Profile p = identical_symbol_profile(0.0);
  p.window = {1, 0, 0, 0, 0};  // dropping the unlikely leading 1 helps
  auto [verdict, next] = validate_next(p, 10.0);
  CHECK(verdict.delta_rel <= 0.0);
  CHECK(verdict.accepted);
}

TEST_CASE("decision agrees with raw-probability brute force") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> th(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    Profile p;
    p.model = oracle::random_model(2, 3, rng);
    p.quantizer.centroids = {10.0, 20.0, 30.0};
    p.window_length = 6;
    p.window = oracle::random_obs(6, 3, rng);
    p.threshold = th(rng);
    const double value = 10.0 * (1 + (trial % 3));

    auto [verdict, next] = validate_next(p, value);

    ObservationSequence shifted(p.window.begin() + 1, p.window.end());
    shifted.push_back(verdict.symbol);
    const double a1 = oracle::path_sum_likelihood(p.model, p.window);
    const double a2 = oracle::path_sum_likelihood(p.model, shifted);
    const double raw_delta = (a1 - a2) / a1;
    CHECK(verdict.delta_rel == doctest::Approx(raw_delta).epsilon(1e-9));
    CHECK(verdict.accepted == (raw_delta <= p.threshold));
  }
}

TEST_CASE("train_profile wiring and degenerate history") {
  SUBCASE("degenerate: identical values, single state and symbol") {
    std::vector<double> history(20, 7.0);
    auto profile = train_profile(history, 1, 1, 5, 0.5, 10, 0);
    CHECK(profile.window == std::vector<int>(5, 0));
    auto [verdict, next] = validate_next(profile, 7.0);
    CHECK(verdict.accepted);
  }
  SUBCASE("history too short") {
    CHECK_THROWS_AS(train_profile({1.0, 2.0, 3.0}, 2, 2, 10, 0.5, 10, 0),
                    std::invalid_argument);
  }
  SUBCASE("trained model beats the uniform init on a held-out window") {
    // history drawn from a known 2-state model through known centroids
    HmmModel source;
    source.n_states = 2;
    source.n_symbols = 3;
    source.transition = {{0.9, 0.1}, {0.2, 0.8}};
    source.emission = {{0.8, 0.15, 0.05}, {0.05, 0.15, 0.8}};
    source.initial = {0.5, 0.5};
    const std::vector<double> centroids = {10.0, 50.0, 100.0};
    auto symbols = sample_sequence(source, 320, 13);

    std::vector<double> history;
    for (int t = 0; t < 300; ++t) history.push_back(centroids[symbols[t]]);
    auto profile = train_profile(history, 2, 3, 10, 0.5, 40, 0);

    ObservationSequence held_out(symbols.begin() + 300, symbols.begin() + 310);
    const double trained_ll =
        forward_likelihood(profile.model, held_out).log_likelihood;
    const double uniform_ll =
        forward_likelihood(uniform_initial_model(2, 3, 0), held_out)
            .log_likelihood;
    CHECK(trained_ll >= uniform_ll);
  }
}

TEST_CASE("window length is conserved across many validations") {
  auto history = low_history(200, 1);
  auto profile = train_profile(history, 3, 3, 8, 0.6, 25, 2);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unif(5.0, 120.0);
  for (int i = 0; i < 200; ++i) {
    auto [verdict, next] = validate_next(profile, unif(rng));
    profile = next;
    CHECK(profile.window.size() == 8);
  }
}

TEST_CASE("out-of-profile values are rejected more often than genuine ones") {
  auto history = low_history(300, 12);
  auto profile = train_profile(history, 5, 3, 10, 0.5, 50, 3);
  std::mt19937_64 rng(100);
  std::uniform_real_distribution<double> genuine(5.0, 15.0);
  std::uniform_real_distribution<double> fraud(100.0, 120.0);
  int fraud_rejects = 0, genuine_rejects = 0;
  const int trials = 300;
  for (int i = 0; i < trials; ++i) {
    if (!validate_next(profile, fraud(rng)).first.accepted) ++fraud_rejects;
    auto [verdict, next] = validate_next(profile, genuine(rng));
    if (!verdict.accepted) ++genuine_rejects;
    profile = next;
  }
  CHECK(fraud_rejects > genuine_rejects);
}

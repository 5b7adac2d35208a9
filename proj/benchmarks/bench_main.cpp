#include <benchmark/benchmark.h>

#include <random>

#include "dcps/hmm.hpp"
#include "dcps/quantizer.hpp"
#include "dcps/sim.hpp"
#include "dcps/validator.hpp"

namespace {

dcps::HmmModel bench_model(int n, int m) {
  return dcps::uniform_initial_model(n, m, 7);
}

void BM_ForwardLikelihood(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int len = static_cast<int>(state.range(1));
  auto model = bench_model(n, 3);
  auto obs = dcps::sample_sequence(model, len, 11);
  for (auto _ : state)
    benchmark::DoNotOptimize(dcps::forward_likelihood(model, obs));
}
BENCHMARK(BM_ForwardLikelihood)->Args({5, 10})->Args({5, 200})->Args({10, 200});

void BM_BaumWelch(benchmark::State& state) {
  auto model = bench_model(5, 3);
  auto obs = dcps::sample_sequence(model, static_cast<int>(state.range(0)), 3);
  for (auto _ : state) {
    auto init = dcps::uniform_initial_model(5, 3, 21);
    benchmark::DoNotOptimize(dcps::baum_welch_train(init, obs, 10, 1e-12));
  }
}
BENCHMARK(BM_BaumWelch)->Arg(200)->Arg(1000);

void BM_KMeansFit(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(0.0, 1000.0);
  std::vector<double> values(static_cast<std::size_t>(state.range(0)));
  for (double& v : values) v = unif(rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(dcps::fit_kmeans(values, 3, 1, 10));
}
BENCHMARK(BM_KMeansFit)->Arg(300)->Arg(3000);

void BM_ValidateNext(benchmark::State& state) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unif(5.0, 100.0);
  std::vector<double> history(300);
  for (double& v : history) v = unif(rng);
  history[5] = 600.0;
  history[80] = 1500.0;
  history[200] = 900.0;
  auto profile = dcps::train_profile(history, 5, 3, 10, 0.5, 30, 1);
  for (auto _ : state) {
    auto [verdict, next] = dcps::validate_next(profile, unif(rng));
    benchmark::DoNotOptimize(verdict);
    profile = std::move(next);
  }
}
BENCHMARK(BM_ValidateNext);

void BM_SimulationTick(benchmark::State& state) {
  dcps::Workload workload;
  for (int i = 0; i < 50; ++i) {
    dcps::ProcessSpec p;
    p.id = "p" + std::to_string(i);
    p.periodicity =
        i % 2 ? dcps::Periodicity::periodic : dcps::Periodicity::aperiodic;
    p.resource_class = dcps::ResourceClass::low;
    p.arrival_tick = i;
    p.subprocesses.push_back({3, 0.0, false});
    p.subprocesses.push_back({2, 0.0, false});
    workload.push_back(p);
  }
  for (auto _ : state)
    benchmark::DoNotOptimize(
        dcps::run_simulation({4, 2, 100000, 0}, workload));
}
BENCHMARK(BM_SimulationTick);

}  // namespace

BENCHMARK_MAIN();

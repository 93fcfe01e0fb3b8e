#include <benchmark/benchmark.h>

#include "optecot/adjuster.hpp"
#include "optecot/cmaes.hpp"
#include "optecot/gp.hpp"
#include "optecot/problems/mc_sphere.hpp"
#include "optecot/problems/symbolic_regression.hpp"
#include "optecot/problems/wind_farm.hpp"
#include "optecot/ranking.hpp"
#include "optecot/rng.hpp"

namespace {

using namespace optecot;

void BM_spearman_scores(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = rng.uniform01();
    b[i] = a[i] + 0.1 * rng.uniform01();
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(spearman_scores(a, b, Direction::maximize));
  }
}
BENCHMARK(BM_spearman_scores)->Arg(10)->Arg(100)->Arg(1000);

void BM_argsort(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  std::vector<double> scores(n);
  for (double& s : scores) s = rng.uniform01();
  for (auto _ : state) {
    benchmark::DoNotOptimize(argsort_scores(scores, Direction::maximize));
  }
}
BENCHMARK(BM_argsort)->Arg(100)->Arg(1000);

void BM_bisect(benchmark::State& state) {
  const AccuracyFn oracle = [](double c) {
    return AccuracyProbe{c >= 0.3 ? 1.0 : 0.0, 0.0};
  };
  for (auto _ : state) {
    benchmark::DoNotOptimize(bisect(oracle, 0.95));
  }
}
BENCHMARK(BM_bisect);

void BM_mcsphere_evaluate(benchmark::State& state) {
  const problems::McSphere problem;
  Rng rng(3);
  const RealVector x = problem.sample(rng);
  const double theta = static_cast<double>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(problem.evaluate(x, theta, ++seed));
  }
}
BENCHMARK(BM_mcsphere_evaluate)->Arg(1)->Arg(100)->Arg(1000);

void BM_windfarm_evaluate(benchmark::State& state) {
  const problems::WindFarm problem;
  Rng rng(4);
  // resample until no rotor overlap, to benchmark the wake-integration path
  RealVector layout = problem.sample(rng);
  while (problem.evaluate(layout, 1.0, 0).score < 0.0) {
    layout = problem.sample(rng);
  }
  const double theta = static_cast<double>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(problem.evaluate(layout, theta, ++seed));
  }
}
BENCHMARK(BM_windfarm_evaluate)->Arg(10)->Arg(1000);

void BM_sr_evaluate(benchmark::State& state) {
  const problems::SymbolicRegression problem;
  Rng rng(5);
  const GpTree tree = problem.sample(rng);
  const double theta = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(problem.evaluate(tree, theta, 0));
  }
}
BENCHMARK(BM_sr_evaluate)->Arg(5)->Arg(50);

void BM_cmaes_ask_tell(benchmark::State& state) {
  CmaEsOptions options;
  options.dimension = static_cast<std::size_t>(state.range(0));
  options.pop_size = 20;
  options.seed = 6;
  CmaEs engine(options);
  Rng rng(7);
  for (auto _ : state) {
    const auto population = engine.ask();
    std::vector<double> scores(population.size());
    for (auto& s : scores) s = rng.uniform01();
    engine.tell(scores);
  }
}
BENCHMARK(BM_cmaes_ask_tell)->Arg(6)->Arg(16);

void BM_gp_ask_tell(benchmark::State& state) {
  GpEngineOptions options;
  options.n_vars = 2;
  options.pop_size = static_cast<std::size_t>(state.range(0));
  options.seed = 8;
  GpEngine engine(options);
  Rng rng(9);
  for (auto _ : state) {
    const auto population = engine.ask();
    std::vector<double> scores(population.size());
    for (auto& s : scores) s = rng.uniform01();
    engine.tell(scores);
  }
}
BENCHMARK(BM_gp_ask_tell)->Arg(32)->Arg(128);

}  // namespace

BENCHMARK_MAIN();

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "optecot/cmaes.hpp"
#include "optecot/experiments.hpp"
#include "optecot/problems/mc_sphere.hpp"
#include "optecot/quality.hpp"
#include "test_support.hpp"

using namespace optecot;
using optecot::testing::ScriptedProblem;

namespace {

std::unique_ptr<RbeaEngine<RealVector>> make_sphere_engine(
    const problems::McSphere& problem, std::size_t pop, std::uint64_t seed) {
  CmaEsOptions options;
  options.dimension = problem.options().dimension;
  options.pop_size = pop;
  options.seed = seed;
  options.bounds = problem.bounds();
  return std::make_unique<CmaEs>(options);
}

QualityCurve make_curve(std::vector<double> times, std::vector<double> values) {
  QualityCurve curve;
  curve.label = "test";
  curve.times = std::move(times);
  curve.values = std::move(values);
  return curve;
}

}  // namespace

TEST_CASE("quality curve at cost 1 equals the recorded best-so-far exactly") {
  problems::McSphereOptions options;
  options.dimension = 2;
  const problems::McSphere problem(options);
  auto engine = make_sphere_engine(problem, 5, 11);
  const RunResult<RealVector> run =
      run_constant_cost(problem, *engine, 1.0, 60000.0, 11);
  const QualityCurve curve = quality_curve(run, problem);

  REQUIRE(curve.size() == run.populations.size());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < run.populations.size(); ++k) {
    for (double s : run.populations[k].scores) best = std::max(best, s);
    CHECK(curve.values[k] == best);
    CHECK(curve.times[k] == run.populations[k].completion_time);
  }
}

TEST_CASE("quality curve may decrease when the approximate incumbent is worse") {
  // two solutions: the approximation prefers the one with worse original score
  const ScriptedProblem problem(1.0, 1000.0, [](int id, double theta) {
    const double full[] = {5.0, 3.0};
    const double approx[] = {1.0, 2.0};
    return theta == 1000.0 ? full[id] : approx[id];
  });
  RunResult<int> run;
  run.populations.push_back({1, 10.0, 0.5, 0, {0}, {1.0}});
  run.populations.push_back({2, 20.0, 0.5, 0, {1}, {2.0}});
  const QualityCurve curve = quality_curve(run, problem);
  // hand-applied definition: incumbents are id0 then id1, original scores 5, 3
  CHECK(curve.values == std::vector<double>{5.0, 3.0});
  CHECK(curve.values[1] < curve.values[0]);
}

TEST_CASE("quality curve matches an independent replay of the run log") {
  const problems::McSphere problem;
  auto engine = make_sphere_engine(problem, 8, 3);
  const RunResult<RealVector> run =
      run_constant_cost(problem, *engine, 0.44, 150000.0, 3);
  const QualityCurve curve = quality_curve(run, problem);

  // independent recomputation from the raw evaluation log
  const double theta1 = problem.parameter_map().theta1();
  double best_score = -std::numeric_limits<double>::infinity();
  RealVector incumbent;
  std::uint64_t incumbent_seed = 0;
  for (std::size_t k = 0; k < run.populations.size(); ++k) {
    const auto& record = run.populations[k];
    for (std::size_t i = 0; i < record.scores.size(); ++i) {
      if (record.scores[i] > best_score) {
        best_score = record.scores[i];
        incumbent = record.solutions[i];
        incumbent_seed = record.eval_seed;
      }
    }
    const double expected =
        problem.evaluate(incumbent, theta1, incumbent_seed).score;
    CHECK(curve.values[k] == expected);
  }
}

TEST_CASE("reach_time: monotone, never-reached and all-above cases") {
  const QualityCurve curve =
      make_curve({10.0, 20.0, 30.0, 40.0, 50.0}, {1.0, 2.0, 3.0, 4.0, 5.0});

  const ReachTime at3 = reach_time(curve, 3.0);
  CHECK(at3.last_at_or_below == 30.0);
  CHECK(at3.first_reach == 30.0);
  CHECK(at3.reached);
  CHECK(at3.below_exists);

  const ReachTime at35 = reach_time(curve, 3.5);
  CHECK(at35.last_at_or_below == 30.0);
  CHECK(at35.first_reach == 40.0);

  const ReachTime never = reach_time(curve, 10.0);
  CHECK_FALSE(never.reached);
  CHECK(never.first_reach == 50.0);
  CHECK(never.last_at_or_below == 50.0);

  const ReachTime above = reach_time(curve, 0.5);
  CHECK_FALSE(above.below_exists);
  CHECK(above.last_at_or_below == 10.0);
  CHECK(above.first_reach == 10.0);
}

TEST_CASE("reach_time on a hand-built non-monotone five-point curve") {
  const QualityCurve curve =
      make_curve({1.0, 2.0, 3.0, 4.0, 5.0}, {1.0, 4.0, 2.0, 5.0, 3.0});
  const ReachTime r = reach_time(curve, 3.0);
  // at-or-below 3 happens at t in {1, 3, 5}; attained first at t = 2
  CHECK(r.last_at_or_below == 5.0);
  CHECK(r.first_reach == 2.0);
  CHECK(r.reached);
}

TEST_CASE("step interpolation holds the last value and rejects early times") {
  const QualityCurve curve = make_curve({10.0, 20.0}, {1.0, 2.0});
  CHECK(curve.value_at(10.0) == 1.0);
  CHECK(curve.value_at(19.9) == 1.0);
  CHECK(curve.value_at(20.0) == 2.0);
  CHECK(curve.value_at(1e9) == 2.0);
  CHECK_THROWS_AS(curve.value_at(9.9), std::out_of_range);
}

TEST_CASE("mean curve is the pointwise average of step functions") {
  const QualityCurve a = make_curve({1.0, 3.0}, {0.0, 2.0});
  const QualityCurve b = make_curve({2.0, 4.0}, {1.0, 3.0});
  const std::vector<QualityCurve> curves{a, b};
  const auto grid = common_time_grid(curves, 4);
  // grid spans [2, 4]: max start to max stop
  CHECK(grid.front() == 2.0);
  CHECK(grid.back() == 4.0);
  const QualityCurve mean = mean_curve(curves, grid, "mean");
  // at t=2: a=0, b=1 -> 0.5 ; at t=4: a=2, b=3 -> 2.5
  CHECK(mean.values.front() == 0.5);
  CHECK(mean.values.back() == 2.5);
}

TEST_CASE("self-comparison gives QI and TR identically 100 percent") {
  const QualityCurve arm =
      make_curve({1.0, 2.0, 3.0, 4.0}, {1.0, 2.0, 3.0, 4.0});
  const ComparisonSeries series = compare_curves(arm, arm);
  REQUIRE(series.times.size() == 4);
  for (double qi : series.quality_increase_pct) CHECK(qi == 100.0);
  REQUIRE(series.tr_times.size() == 4);
  for (double tr : series.time_required_pct) CHECK(tr == 100.0);
}

TEST_CASE("TR points are omitted where the original quality is unreachable") {
  const QualityCurve original = make_curve({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0});
  const QualityCurve proposal = make_curve({1.0, 2.0, 3.0}, {0.5, 0.6, 2.0});
  const ComparisonSeries series = compare_curves(proposal, original);
  CHECK(series.quality_increase_pct.size() == 3);
  // proposal reaches 1.0 and 2.0 (at t=3) but never 3.0
  REQUIRE(series.tr_times == std::vector<double>{1.0, 2.0});
  CHECK(series.time_required_pct[0] == doctest::Approx(300.0));
  CHECK(series.time_required_pct[1] == doctest::Approx(150.0));
}

TEST_CASE("QI and TR are pure functions of the emitted curve csvs") {
  const QualityCurve proposal =
      make_curve({1.0, 2.0, 3.0, 4.0}, {0.31, 2.7182, 3.25, 5.5});
  const QualityCurve original =
      make_curve({1.0, 2.0, 3.0, 4.0}, {0.3, 1.9, 3.1, 4.4});
  const ComparisonSeries direct = compare_curves(proposal, original);

  const QualityCurve proposal2 =
      QualityCurve::from_csv_text(proposal.to_csv(), "p");
  const QualityCurve original2 =
      QualityCurve::from_csv_text(original.to_csv(), "o");
  const ComparisonSeries replayed = compare_curves(proposal2, original2);
  CHECK(replayed.times == direct.times);
  CHECK(replayed.quality_increase_pct == direct.quality_increase_pct);
  CHECK(replayed.tr_times == direct.tr_times);
  CHECK(replayed.time_required_pct == direct.time_required_pct);
}

TEST_CASE("degenerate sweep over the singleton grid") {
  problems::McSphereOptions options;
  options.dimension = 2;
  const problems::McSphere problem(options);
  const EngineFactory<RealVector> factory = [&](std::uint64_t seed) {
    return make_sphere_engine(problem, 5, seed);
  };
  const std::vector<double> grid{1.0};
  const SweepResult<RealVector> sweep =
      run_sweep(problem, factory, grid, 1, 5, 30000.0);
  CHECK(sweep.optimal_constant_cost == 1.0);
  CHECK(sweep.ratio_vs_original == 1.0);
  REQUIRE(sweep.rows.size() == 1);
  CHECK(sweep.rows[0].mean_reach.reached);
  CHECK(sweep.failures.empty());

  const std::vector<double> missing_one{0.0, 0.5};
  CHECK_THROWS_AS(run_sweep(problem, factory, missing_one, 1, 5, 30000.0),
                  std::invalid_argument);
}

TEST_CASE("suitability report is exact on proxy-timed problems") {
  const optecot::testing::LinearTimeProblem problem(1.0, 1000.0, false);
  const std::vector<double> grid = default_cost_grid(10);
  const std::uint64_t seed = 17;
  const SuitabilityReport report =
      suitability_report<double>(problem, 20, grid, seed);
  const CalibrationTable table = calibrate(problem, 20, grid, seed);

  REQUIRE(report.costs.size() == 10);
  for (std::size_t i = 0; i < report.costs.size(); ++i) {
    CHECK(report.mean_times[i] == table.time_for_cost(report.costs[i]));
  }
  CHECK(report.extra_eval_proportion.back() == 0.0);
  CHECK(report.warning.empty());
  for (double d : report.distances.values.back()) CHECK(d == 0.0);
  for (double extra : report.extra_eval_proportion) CHECK(extra >= 0.0);
  const std::string csv = report.times_csv();
  CHECK(csv.rfind("cost,theta,mean_time,extra_eval_proportion\n", 0) == 0);
}

TEST_CASE("suitability surfaces non-monotone times as a warning") {
  class Decreasing final : public Problem<double> {
   public:
    Decreasing() : map_(1.0, 1000.0, false) {}
    std::string name() const override { return "bad"; }
    Direction direction() const override { return Direction::maximize; }
    const ParameterMap& parameter_map() const override { return map_; }
    std::string time_unit() const override { return "units"; }
    double sample(Rng& rng) const override { return rng.uniform01(); }
    Evaluation evaluate(const double& x, double theta, std::uint64_t) const override {
      return {x, 2000.0 - theta};
    }

   private:
    ParameterMap map_;
  } problem;
  const SuitabilityReport report =
      suitability_report<double>(problem, 3, std::vector<double>{0.0, 0.5, 1.0}, 1);
  CHECK_FALSE(report.warning.empty());
}

TEST_CASE("constant-cost runs are deterministic given config and seed") {
  const problems::McSphere problem;
  auto engine_a = make_sphere_engine(problem, 6, 21);
  auto engine_b = make_sphere_engine(problem, 6, 21);
  const RunResult<RealVector> a =
      run_constant_cost(problem, *engine_a, 0.33, 80000.0, 21);
  const RunResult<RealVector> b =
      run_constant_cost(problem, *engine_b, 0.33, 80000.0, 21);
  CHECK(a.trace.to_csv() == b.trace.to_csv());
  CHECK(quality_curve(a, problem).to_csv() == quality_curve(b, problem).to_csv());
  CHECK(a.best == b.best);
}

TEST_CASE("comparison produces shared-grid curves and sane series") {
  problems::McSphereOptions options;
  options.dimension = 3;
  const problems::McSphere problem(options);
  const CalibrationTable table = calibrate(problem, 5, default_cost_grid(10), 2);
  const EngineFactory<RealVector> factory = [&](std::uint64_t seed) {
    return make_sphere_engine(problem, 10, seed);
  };
  const BudgetPlan plan = budget_plan(10, table.t0(), table.t1());
  OptecotConfig config;
  config.t_max = 120000.0;
  config.sample_size = plan.sample_size;
  config.period = plan.period;

  const ComparisonResult<RealVector> result =
      run_comparison(problem, table, factory, config, 2, 31, 60);
  CHECK(result.mean_optecot.times == result.mean_original.times);
  CHECK(result.mean_cost.times == result.mean_optecot.times);
  CHECK(result.dominance >= 0.0);
  CHECK(result.dominance <= 1.0);
  CHECK(result.series.times.size() == 60);
  CHECK(result.optecot_traces.size() == 2);
  for (double c : result.mean_cost.values) {
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
  }
  CHECK(result.median_reach_ratio > 0.0);
}

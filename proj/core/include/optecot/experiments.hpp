#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "optecot/controller.hpp"
#include "optecot/quality.hpp"
#include "optecot/ranking.hpp"

namespace optecot {

template <class S>
using EngineFactory = std::function<std::unique_ptr<RbeaEngine<S>>(std::uint64_t seed)>;

/// Optimization run at one fixed evaluation cost: ask, evaluate everything
/// at theta_c, tell, until the runtime limit. Evaluation seeds follow the
/// same per-iteration derivation as the controller, so a run at cost 1
/// reproduces a pinned controller run bit for bit.
template <class S>
RunResult<S> run_constant_cost(const Problem<S>& problem, RbeaEngine<S>& engine,
                               double cost, TimeUnits t_max, std::uint64_t seed) {
  require_cost_in_range(cost, "run_constant_cost");
  if (!(t_max > 0.0)) {
    throw std::invalid_argument("run_constant_cost: t_max must be positive");
  }
  const double theta = problem.parameter_map().param_for_cost(cost);
  const bool maximize = problem.direction() == Direction::maximize;

  RunResult<S> result;
  result.trace.problem = problem.name();
  result.trace.seed = seed;
  result.trace.config.t_max = t_max;
  result.trace.config.period = t_max;
  result.trace.config.seed = seed;

  std::optional<double> best_score;
  TimeUnits elapsed = 0.0;
  std::size_t iteration = 0;
  while (elapsed < t_max) {
    ++iteration;
    const std::uint64_t eval_seed = mix64(seed, 0x5EED, iteration);
    const std::vector<S> population = engine.ask();
    std::vector<double> scores(population.size());
    for (std::size_t i = 0; i < population.size(); ++i) {
      const Evaluation e = problem.evaluate(population[i], theta, eval_seed);
      scores[i] = e.score;
      elapsed += e.elapsed;
    }
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (!best_score || (maximize ? scores[i] > *best_score : scores[i] < *best_score)) {
        best_score = scores[i];
        result.best = population[i];
      }
    }
    double mean = 0.0;
    for (double s : scores) mean += s;
    mean /= static_cast<double>(scores.size());
    double var = 0.0;
    for (double s : scores) {
      const double d = s - mean;
      var += d * d;
    }
    var /= static_cast<double>(scores.size());

    engine.tell(scores);
    result.trace.records.push_back(
        {iteration, elapsed, cost, var, *best_score, false, 0.0});
    result.populations.push_back({iteration, elapsed, cost, eval_seed,
                                  population, scores});
  }
  result.best_score = best_score.value_or(0.0);
  return result;
}

struct RunFailure {
  double cost = 0.0;
  std::uint64_t seed = 0;
  std::string message;
};

struct SweepCostRow {
  double cost = 0.0;
  std::size_t n_runs = 0;
  double mean_final_quality = 0.0;
  ReachTime mean_reach;            // against q_ref, on this cost's mean curve
  double median_seed_ratio = 0.0;  // matched per-seed first-reach ratio vs cost 1
  std::size_t n_seeds_reached = 0;
};

template <class S>
struct SweepResult {
  std::vector<double> grid;
  std::vector<std::uint64_t> seeds;
  double q_ref = 0.0;              // mean final quality of the cost-1 arm
  std::vector<SweepCostRow> rows;
  double optimal_constant_cost = 1.0;
  double ratio_vs_original = 1.0;  // mean-curve first-reach ratio at the optimum
  std::vector<QualityCurve> mean_curves;               // one per cost
  std::vector<std::vector<QualityCurve>> run_curves;   // [cost][seed]
  std::vector<RunFailure> failures;

  /// cost,n_runs,mean_final_quality,t_best_last_below,t_best_first_reach,
  /// reached,median_seed_ratio,n_seeds_reached
  std::string summary_csv() const {
    CsvWriter csv(
        "cost,n_runs,mean_final_quality,t_best_last_below,t_best_first_reach,"
        "reached,median_seed_ratio,n_seeds_reached");
    for (const auto& row : rows) {
      csv.row({format_double(row.cost), format_int(static_cast<long long>(row.n_runs)),
               format_double(row.mean_final_quality),
               format_double(row.mean_reach.last_at_or_below),
               format_double(row.mean_reach.first_reach),
               row.mean_reach.reached ? "1" : "0",
               format_double(row.median_seed_ratio),
               format_int(static_cast<long long>(row.n_seeds_reached))});
    }
    return csv.text();
  }
};

/// First time a curve attains the reference, or nullopt.
inline std::optional<TimeUnits> first_reach_time(const QualityCurve& curve,
                                                 double q_ref, Direction direction) {
  const ReachTime r = reach_time(curve, q_ref, direction);
  if (!r.reached) return std::nullopt;
  return r.first_reach;
}

/// Constant-cost sweep: solves the problem at every grid cost with n_seeds
/// seeds each, averages quality curves per cost (step interpolation on the
/// cost's own time grid) and reports reach times against the mean final
/// quality of the cost-1 arm. The optimal constant cost minimizes the
/// first-reach time on the mean curves. Per-seed ratios are matched: both
/// arms of a seed are measured against the final quality of that seed's
/// cost-1 run.
template <class S>
SweepResult<S> run_sweep(const Problem<S>& problem, const EngineFactory<S>& factory,
                         std::span<const double> grid, std::size_t n_seeds,
                         std::uint64_t base_seed, TimeUnits t_max,
                         std::size_t grid_points = 400) {
  if (n_seeds < 1) throw std::invalid_argument("run_sweep: need at least one seed");
  SweepResult<S> result;
  result.grid.assign(grid.begin(), grid.end());
  std::sort(result.grid.begin(), result.grid.end());
  result.grid.erase(std::unique(result.grid.begin(), result.grid.end()),
                    result.grid.end());
  if (result.grid.empty() || result.grid.back() != 1.0) {
    throw std::invalid_argument("run_sweep: grid must include cost 1");
  }
  for (double c : result.grid) require_cost_in_range(c, "run_sweep");
  for (std::size_t s = 0; s < n_seeds; ++s) {
    result.seeds.push_back(base_seed + s);
  }

  const Direction dir = problem.direction();
  result.run_curves.resize(result.grid.size());
  for (std::size_t ci = 0; ci < result.grid.size(); ++ci) {
    const double cost = result.grid[ci];
    for (std::uint64_t seed : result.seeds) {
      try {
        auto engine = factory(seed);
        const RunResult<S> run =
            run_constant_cost(problem, *engine, cost, t_max, seed);
        result.run_curves[ci].push_back(quality_curve(
            run, problem, "cost_" + format_double(cost) + "_seed_" + format_int(static_cast<long long>(seed))));
      } catch (const std::exception& e) {
        result.failures.push_back({cost, seed, e.what()});
      }
    }
    if (result.run_curves[ci].empty()) {
      throw std::runtime_error("run_sweep: every run failed at cost " +
                               format_double(cost));
    }
  }

  for (std::size_t ci = 0; ci < result.grid.size(); ++ci) {
    const auto grid_times = common_time_grid(result.run_curves[ci], grid_points);
    result.mean_curves.push_back(mean_curve(result.run_curves[ci], grid_times,
                                            "cost_" + format_double(result.grid[ci])));
  }

  const std::size_t original_index = result.grid.size() - 1;
  const QualityCurve& original_mean = result.mean_curves[original_index];
  result.q_ref = original_mean.values.back();
  const auto& original_runs = result.run_curves[original_index];

  for (std::size_t ci = 0; ci < result.grid.size(); ++ci) {
    SweepCostRow row;
    row.cost = result.grid[ci];
    row.n_runs = result.run_curves[ci].size();
    row.mean_final_quality = result.mean_curves[ci].values.back();
    row.mean_reach = reach_time(result.mean_curves[ci], result.q_ref, dir);

    std::vector<double> ratios;
    const std::size_t paired =
        std::min(row.n_runs, original_runs.size());
    for (std::size_t s = 0; s < paired; ++s) {
      const double seed_ref = original_runs[s].values.back();
      const auto t_original = first_reach_time(original_runs[s], seed_ref, dir);
      const auto t_cost = first_reach_time(result.run_curves[ci][s], seed_ref, dir);
      if (t_cost.has_value()) ++row.n_seeds_reached;
      if (t_original && t_cost) {
        ratios.push_back(*t_cost / *t_original);
      } else {
        ratios.push_back(std::numeric_limits<double>::infinity());
      }
    }
    row.median_seed_ratio = ratios.empty() ? 0.0 : median(ratios);
    result.rows.push_back(row);
  }

  // optimal constant cost: fastest mean-curve first-reach among arms that do
  // reach the original final quality
  double best_time = std::numeric_limits<double>::infinity();
  result.optimal_constant_cost = 1.0;
  for (const auto& row : result.rows) {
    if (!row.mean_reach.reached) continue;
    if (row.mean_reach.first_reach < best_time) {
      best_time = row.mean_reach.first_reach;
      result.optimal_constant_cost = row.cost;
    }
  }
  const double t_original_reach =
      result.rows[original_index].mean_reach.first_reach;
  result.ratio_vs_original =
      t_original_reach > 0.0 ? best_time / t_original_reach : 1.0;
  return result;
}

template <class S>
struct ComparisonResult {
  std::vector<std::uint64_t> seeds;
  std::vector<QualityCurve> optecot_curves;   // per seed
  std::vector<QualityCurve> original_curves;  // per seed
  QualityCurve mean_optecot;
  QualityCurve mean_original;
  QualityCurve mean_cost;      // tracked cost over time
  ComparisonSeries series;
  double dominance = 0.0;      // fraction of the grid where OPTECOT >= original
  double median_reach_ratio = 0.0;  // matched per-seed first-reach ratio
  std::vector<RunTrace> optecot_traces;
  std::vector<RunFailure> failures;
};

/// OPTECOT against the original objective over a seed set. Mean curves share
/// one time grid so the quality-increase and time-required series are well
/// defined; reach ratios are matched per seed against the original arm's own
/// final quality.
template <class S>
ComparisonResult<S> run_comparison(const Problem<S>& problem,
                                   const CalibrationTable& table,
                                   const EngineFactory<S>& factory,
                                   OptecotConfig config, std::size_t n_seeds,
                                   std::uint64_t base_seed,
                                   std::size_t grid_points = 400) {
  if (n_seeds < 1) throw std::invalid_argument("run_comparison: need seeds");
  ComparisonResult<S> result;
  const Direction dir = problem.direction();

  for (std::size_t s = 0; s < n_seeds; ++s) {
    const std::uint64_t seed = base_seed + s;
    try {
      auto optecot_engine = factory(seed);
      OptecotConfig run_config = config;
      run_config.seed = seed;
      const RunResult<S> optecot_run =
          run_optecot(problem, table, *optecot_engine, run_config);
      auto original_engine = factory(seed);
      const RunResult<S> original_run = run_constant_cost(
          problem, *original_engine, 1.0, config.t_max, seed);
      result.seeds.push_back(seed);
      result.optecot_curves.push_back(quality_curve(
          optecot_run, problem, "optecot_seed_" + format_int(static_cast<long long>(seed))));
      result.original_curves.push_back(quality_curve(
          original_run, problem, "original_seed_" + format_int(static_cast<long long>(seed))));
      result.optecot_traces.push_back(optecot_run.trace);
    } catch (const std::exception& e) {
      result.failures.push_back({1.0, seed, e.what()});
    }
  }
  if (result.optecot_curves.empty()) {
    throw std::runtime_error("run_comparison: every run failed");
  }

  std::vector<QualityCurve> all;
  all.insert(all.end(), result.optecot_curves.begin(), result.optecot_curves.end());
  all.insert(all.end(), result.original_curves.begin(), result.original_curves.end());
  const auto grid_times = common_time_grid(all, grid_points);
  result.mean_optecot = mean_curve(result.optecot_curves, grid_times, "optecot");
  result.mean_original = mean_curve(result.original_curves, grid_times, "original");
  result.series = compare_curves(result.mean_optecot, result.mean_original, dir);
  result.dominance = dominance_fraction(result.mean_optecot, result.mean_original, dir);

  std::vector<QualityCurve> cost_curves;
  cost_curves.reserve(result.optecot_traces.size());
  for (const auto& trace : result.optecot_traces) {
    cost_curves.push_back(cost_curve(trace));
  }
  result.mean_cost = mean_curve(cost_curves, grid_times, "mean_cost");

  std::vector<double> ratios;
  for (std::size_t s = 0; s < result.seeds.size(); ++s) {
    const double seed_ref = result.original_curves[s].values.back();
    const auto t_original =
        first_reach_time(result.original_curves[s], seed_ref, dir);
    const auto t_optecot =
        first_reach_time(result.optecot_curves[s], seed_ref, dir);
    if (t_original && t_optecot) {
      ratios.push_back(*t_optecot / *t_original);
    } else {
      ratios.push_back(std::numeric_limits<double>::infinity());
    }
  }
  result.median_reach_ratio = median(ratios);
  return result;
}

struct SuitabilityReport {
  std::vector<double> costs;
  std::vector<double> thetas;
  std::vector<TimeUnits> mean_times;
  std::vector<double> extra_eval_proportion;  // t1 / tc - 1
  std::string warning;                        // empty when times are monotone
  RankingDistanceMatrix distances;

  /// cost,theta,mean_time,extra_eval_proportion
  std::string times_csv() const {
    CsvWriter csv("cost,theta,mean_time,extra_eval_proportion");
    for (std::size_t i = 0; i < costs.size(); ++i) {
      csv.row({format_double(costs[i]), format_double(thetas[i]),
               format_double(mean_times[i]), format_double(extra_eval_proportion[i])});
    }
    return csv.text();
  }
};

/// Per-cost mean evaluation times, the proportion of extra evaluations
/// affordable at each cost, and the ranking-distance matrix, all over the
/// same fixed sample that calibrate() would draw for this seed. A mean-time
/// regression beyond tolerance becomes a warning, not an error.
template <class S>
SuitabilityReport suitability_report(const Problem<S>& problem,
                                     std::size_t n_solutions,
                                     std::span<const double> grid,
                                     std::uint64_t seed, double tolerance = 0.01) {
  if (n_solutions < 2) {
    throw std::invalid_argument("suitability_report: need at least 2 solutions");
  }
  SuitabilityReport report;
  report.costs = normalize_grid(grid, "suitability_report");
  const auto sample = sample_solutions(problem, n_solutions, seed);
  const std::uint64_t eval_seed = calibration_eval_seed(seed);

  for (double c : report.costs) {
    const double theta = problem.parameter_map().param_for_cost(c);
    TimeUnits total = 0.0;
    for (const auto& x : sample) {
      total += problem.evaluate(x, theta, eval_seed).elapsed;
    }
    report.thetas.push_back(theta);
    report.mean_times.push_back(total / static_cast<double>(n_solutions));
  }
  const TimeUnits t1 = report.mean_times.back();
  for (std::size_t i = 0; i < report.mean_times.size(); ++i) {
    report.extra_eval_proportion.push_back(t1 / report.mean_times[i] - 1.0);
    if (i > 0 && report.mean_times[i - 1] - report.mean_times[i] > tolerance * t1) {
      report.warning =
          "mean evaluation time regresses between costs " +
          format_double(report.costs[i - 1]) + " and " + format_double(report.costs[i]) +
          "; the parameter may not be a suitable cost index";
    }
  }
  report.distances =
      ranking_distance_matrix(problem, std::span<const S>(sample), report.costs, eval_seed);
  return report;
}

}  // namespace optecot

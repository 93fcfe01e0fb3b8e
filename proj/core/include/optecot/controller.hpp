#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "optecot/adjuster.hpp"
#include "optecot/cost_model.hpp"
#include "optecot/problem.hpp"
#include "optecot/ranking.hpp"
#include "optecot/rbea.hpp"
#include "optecot/rng.hpp"
#include "optecot/types.hpp"

namespace optecot {

struct OptecotConfig {
  double alpha = 0.95;       // accuracy threshold
  std::size_t beta = 5;      // variances entering the confidence interval
  std::size_t kappa = 3;     // consecutive ceiling results that stop adjusting
  TimeUnits t_max = 0.0;     // runtime limit
  std::size_t sample_size = 10;
  TimeUnits period = 0.0;    // minimum spacing between readjustments
  std::uint64_t seed = 0;

  void validate() const;
};

/// Mean +- 2 * population standard deviation of the given variances.
std::pair<double, double> confidence_interval(std::span<const double> variances);

struct ControllerState {
  double current_cost = 1.0;
  std::vector<double> variances;     // V: one entry per evaluated population
  std::size_t bisection_count = 0;   // B
  TimeUnits elapsed = 0.0;
  std::size_t consecutive_ceiling = 0;  // bisection results equal to 0.9375 in a row
  bool frozen = false;               // cost pinned to 1, no further bisections
  TimeUnits bisection_elapsed = 0.0; // cumulative time charged to bisections

  /// State that evaluates everything at the original cost and never adjusts.
  static ControllerState pinned_full_cost() {
    ControllerState s;
    s.current_cost = 1.0;
    s.frozen = true;
    return s;
  }
};

/// Variance-drift trigger: true iff `new_variance` (the most recently
/// recorded variance, state.variances.back()) lies strictly outside the
/// confidence interval of the `beta` variances preceding it, the period
/// budget allows another application (B < floor(elapsed / period)), and the
/// controller is not frozen. A value exactly on the interval boundary counts
/// as inside. Throws unless at least beta + 1 variances are recorded.
bool should_readjust(const ControllerState& state, const OptecotConfig& config,
                     double new_variance);

struct TraceRecord {
  std::size_t iteration = 0;   // 1-based population counter
  TimeUnits elapsed = 0.0;     // cumulative, after this population
  double cost = 0.0;           // cost the population was evaluated at
  double variance = 0.0;       // population variance of the used scores
  double best_score = 0.0;     // best evaluation-time score so far
  bool readjusted = false;     // variance-drift bisection ran this step
  TimeUnits bisection_elapsed = 0.0;  // cumulative bisection time so far
};

struct BisectionTraceEntry {
  std::size_t call_index = 0;  // 0 is the initial application
  std::size_t iteration = 0;   // population the call preceded
  BisectionResult result;
};

struct RunTrace {
  std::string problem;
  std::uint64_t seed = 0;
  OptecotConfig config;
  std::vector<TraceRecord> records;
  std::vector<BisectionTraceEntry> bisections;

  /// `iteration,elapsed,cost,variance,best_score,readjusted`
  std::string to_csv() const;
  /// One row per bisection application.
  std::string bisections_to_csv() const;
  /// Sidecar document: problem, seed, controller parameters, the full
  /// bisection traces and an optional verbatim config snapshot.
  std::string sidecar_json(const std::string& config_text = {}) const;
};

template <class S>
struct PopulationRecord {
  std::size_t iteration = 0;
  TimeUnits completion_time = 0.0;
  double cost = 0.0;
  std::uint64_t eval_seed = 0;
  std::vector<S> solutions;
  std::vector<double> scores;
};

template <class S>
struct RunResult {
  S best{};
  double best_score = 0.0;
  RunTrace trace;
  std::vector<PopulationRecord<S>> populations;
};

/// Thrown when a run aborts mid-loop; carries the trace recorded so far so
/// callers can flush it.
class RunAbortedError : public std::runtime_error {
 public:
  RunAbortedError(const std::string& message, RunTrace partial)
      : std::runtime_error(message), trace(std::move(partial)) {}

  RunTrace trace;
};

/// Drives the cost-tracking loop for one optimization run: owns the mutable
/// state, decides when to re-run the bisection, evaluates populations at the
/// tracked cost and keeps exact budget accounting on the evaluator-reported
/// clock. One instance per run; strictly sequential.
template <class S>
class Controller {
 public:
  Controller(const Problem<S>& problem, const CalibrationTable& table,
             OptecotConfig config,
             ControllerState initial_state = ControllerState{})
      : problem_(problem),
        table_(table),
        config_(std::move(config)),
        state_(std::move(initial_state)),
        rng_(mix64(config_.seed, 0xC011)) {
    config_.validate();
  }

  const ControllerState& state() const { return state_; }
  const std::vector<BisectionTraceEntry>& bisections() const { return bisections_; }
  const std::vector<TraceRecord>& records() const { return records_; }

  /// One Alg.-2 loop body: possibly freeze or readjust, then evaluate the
  /// population at the tracked cost. Returns the scores for the RBEA's
  /// selection step.
  std::vector<double> step(std::span<const S> population) {
    if (population.empty()) {
      throw std::invalid_argument("controller step: empty population");
    }
    if (config_.t_max > 0.0 && state_.elapsed >= config_.t_max) {
      throw std::logic_error("controller step: runtime limit already reached");
    }
    const std::size_t iteration = state_.variances.size() + 1;
    const std::uint64_t eval_seed = mix64(config_.seed, 0x5EED, iteration);
    const double theta1 = problem_.parameter_map().theta1();

    bool readjusted = false;
    std::vector<std::optional<double>> cached(population.size());
    if (!state_.frozen) {
      if (state_.bisection_count == 0) {
        run_bisection(population, eval_seed, iteration, cached);
      } else if (state_.variances.size() > config_.beta) {
        if (state_.consecutive_ceiling >= config_.kappa) {
          state_.current_cost = 1.0;
          state_.frozen = true;
        } else if (should_readjust(state_, config_, state_.variances.back())) {
          run_bisection(population, eval_seed, iteration, cached);
          readjusted = true;
        }
      }
    }

    const double theta =
        state_.frozen ? theta1
                      : problem_.parameter_map().param_for_cost(state_.current_cost);
    std::vector<double> scores(population.size());
    TimeUnits population_time = 0.0;
    for (std::size_t i = 0; i < population.size(); ++i) {
      if (cached[i].has_value()) {
        scores[i] = *cached[i];
        continue;  // evaluation time already charged by the final midpoint
      }
      try {
        const Evaluation e = problem_.evaluate(population[i], theta, eval_seed);
        scores[i] = e.score;
        population_time += e.elapsed;
      } catch (const std::exception& e) {
        throw std::runtime_error("controller step: evaluating population member " +
                                 std::to_string(i) + " at iteration " +
                                 std::to_string(iteration) + ": " + e.what());
      }
    }
    state_.elapsed += population_time;
    state_.variances.push_back(population_variance(scores));

    for (std::size_t i = 0; i < population.size(); ++i) {
      if (best_score_ == std::nullopt || better(scores[i], *best_score_)) {
        best_score_ = scores[i];
        best_index_ = {iteration, i};
      }
    }

    records_.push_back({iteration, state_.elapsed, state_.current_cost,
                        state_.variances.back(), *best_score_, readjusted,
                        state_.bisection_elapsed});
    last_population_ = {iteration, state_.elapsed, state_.current_cost,
                        eval_seed, std::vector<S>(population.begin(), population.end()),
                        scores};
    return scores;
  }

  /// The last population record produced by step(); consumed by run drivers
  /// building quality curves.
  const PopulationRecord<S>& last_population() const { return last_population_; }

  std::optional<double> best_score() const { return best_score_; }

  /// (iteration, index within that population) of the incumbent.
  std::pair<std::size_t, std::size_t> best_index() const { return best_index_; }

 private:
  bool better(double a, double b) const {
    return problem_.direction() == Direction::maximize ? a > b : a < b;
  }

  static double population_variance(std::span<const double> scores) {
    const double n = static_cast<double>(scores.size());
    double mean = 0.0;
    for (double s : scores) mean += s;
    mean /= n;
    double acc = 0.0;
    for (double s : scores) {
      const double d = s - mean;
      acc += d * d;
    }
    return acc / n;
  }

  void run_bisection(std::span<const S> population, std::uint64_t eval_seed,
                     std::size_t iteration,
                     std::vector<std::optional<double>>& cached) {
    if (population.size() < 2) {
      throw std::invalid_argument(
          "controller step: population too small for a bisection sample");
    }
    std::size_t want = config_.sample_size;
    if (want < 2) want = 2;
    if (want > population.size()) want = population.size();
    const std::vector<std::size_t> sample_idx =
        rng_.sample_indices(population.size(), want);

    const double theta1 = problem_.parameter_map().theta1();
    std::vector<double> ref_scores;
    TimeUnits ref_elapsed = 0.0;
    std::vector<double> last_scores;
    TimeUnits last_eval_elapsed = 0.0;

    AccuracyFn probe = [&](double cost) -> AccuracyProbe {
      AccuracyProbe out;
      if (ref_scores.empty()) {
        ref_scores.reserve(sample_idx.size());
        for (std::size_t idx : sample_idx) {
          const Evaluation e = problem_.evaluate(population[idx], theta1, eval_seed);
          ref_scores.push_back(e.score);
          ref_elapsed += e.elapsed;
        }
        out.elapsed += ref_elapsed;
      }
      const double theta = problem_.parameter_map().param_for_cost(cost);
      std::vector<double> scores;
      scores.reserve(sample_idx.size());
      TimeUnits eval_elapsed = 0.0;
      for (std::size_t idx : sample_idx) {
        const Evaluation e = problem_.evaluate(population[idx], theta, eval_seed);
        scores.push_back(e.score);
        eval_elapsed += e.elapsed;
      }
      out.elapsed += eval_elapsed;
      out.accuracy = spearman_scores(scores, ref_scores, problem_.direction());
      last_scores = std::move(scores);
      last_eval_elapsed = eval_elapsed;
      return out;
    };

    BisectionResult result = bisect(probe, config_.alpha);

    // The final midpoint becomes the evaluation cost, so its sample
    // evaluations count as population time and their scores are reused.
    const TimeUnits charged = result.elapsed - last_eval_elapsed;
    state_.bisection_elapsed += charged;
    state_.elapsed += result.elapsed;
    state_.current_cost = result.cost;
    state_.bisection_count += 1;
    state_.consecutive_ceiling =
        result.cost == 0.9375 ? state_.consecutive_ceiling + 1 : 0;
    for (std::size_t k = 0; k < sample_idx.size(); ++k) {
      cached[sample_idx[k]] = last_scores[k];
    }
    bisections_.push_back({bisections_.size(), iteration, std::move(result)});
  }

  const Problem<S>& problem_;
  const CalibrationTable& table_;
  OptecotConfig config_;
  ControllerState state_;
  Rng rng_;
  std::vector<TraceRecord> records_;
  std::vector<BisectionTraceEntry> bisections_;
  std::optional<double> best_score_;
  std::pair<std::size_t, std::size_t> best_index_{0, 0};
  PopulationRecord<S> last_population_;
};

/// Full OPTECOT run: ask -> step -> tell until the runtime limit, returning
/// the best solution under the scores used at evaluation time together with
/// the trace and the full population log.
template <class S>
RunResult<S> run_optecot(const Problem<S>& problem, const CalibrationTable& table,
                         RbeaEngine<S>& engine, const OptecotConfig& config,
                         ControllerState initial_state = ControllerState{}) {
  if (!(config.t_max > 0.0)) {
    throw std::invalid_argument("run: t_max must be positive");
  }
  Controller<S> controller(problem, table, config, std::move(initial_state));
  RunResult<S> result;
  result.trace.problem = problem.name();
  result.trace.seed = config.seed;
  result.trace.config = config;

  std::optional<S> best;
  while (controller.state().elapsed < config.t_max) {
    try {
      const std::vector<S> population = engine.ask();
      const std::vector<double> scores = controller.step(population);
      const auto [best_iter, best_idx] = controller.best_index();
      if (best_iter == controller.last_population().iteration) {
        best = population[best_idx];
      }
      engine.tell(scores);
      result.populations.push_back(controller.last_population());
    } catch (const std::exception& e) {
      RunTrace partial = result.trace;
      partial.records = controller.records();
      partial.bisections = controller.bisections();
      throw RunAbortedError(e.what(), std::move(partial));
    }
  }
  result.trace.records = controller.records();
  result.trace.bisections = controller.bisections();
  if (best.has_value()) result.best = *best;
  result.best_score = controller.best_score().value_or(0.0);
  return result;
}

}  // namespace optecot

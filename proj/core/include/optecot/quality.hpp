#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "optecot/controller.hpp"
#include "optecot/problem.hpp"
#include "optecot/types.hpp"

namespace optecot {

/// Quality of the incumbent over time, measured with the original objective.
/// Times are the population completion times, strictly increasing. The same
/// container carries cost-over-time curves (values are then costs).
struct QualityCurve {
  std::string label;
  std::vector<TimeUnits> times;
  std::vector<double> values;

  std::size_t size() const { return times.size(); }
  /// `t,quality` rows.
  std::string to_csv() const;
  static QualityCurve from_csv_text(const std::string& text, std::string label);

  /// Step (last-value) interpolation; t before the first point is
  /// unrepresentable and throws.
  double value_at(TimeUnits t) const;
};

/// Rebuilds the quality curve from a run log: at every population completion
/// time the incumbent (best by evaluation-time score over everything fully
/// evaluated so far) is re-evaluated with the original objective, using the
/// evaluation seed of the step that produced it. These diagnostic
/// re-evaluations are not charged to the run budget.
template <class S>
QualityCurve quality_curve(const RunResult<S>& run, const Problem<S>& problem,
                           std::string label = "quality") {
  QualityCurve curve;
  curve.label = std::move(label);
  const bool maximize = problem.direction() == Direction::maximize;
  const double theta1 = problem.parameter_map().theta1();

  std::optional<double> best_score;
  double incumbent_quality = 0.0;
  for (const auto& record : run.populations) {
    bool changed = false;
    std::size_t best_index = 0;
    for (std::size_t i = 0; i < record.scores.size(); ++i) {
      const double s = record.scores[i];
      if (!best_score || (maximize ? s > *best_score : s < *best_score)) {
        best_score = s;
        best_index = i;
        changed = true;
      }
    }
    if (changed) {
      incumbent_quality =
          problem.evaluate(record.solutions[best_index], theta1, record.eval_seed).score;
    }
    curve.times.push_back(record.completion_time);
    curve.values.push_back(incumbent_quality);
  }
  return curve;
}

/// Tracked evaluation cost over time, from the run trace.
QualityCurve cost_curve(const RunTrace& trace, std::string label = "cost");

/// Reach-time of a reference quality. `last_at_or_below` is the literal
/// largest recorded time whose quality is still at-or-below the reference
/// (for minimization: at-or-above); `first_reach` is the first time the
/// reference is attained. When the curve never attains the reference,
/// `reached` is false and `first_reach` falls back to the last recorded
/// time; when every point already exceeds it, `below_exists` is false and
/// `last_at_or_below` falls back to the first recorded time.
struct ReachTime {
  TimeUnits last_at_or_below = 0.0;
  bool below_exists = false;
  TimeUnits first_reach = 0.0;
  bool reached = false;
};

ReachTime reach_time(const QualityCurve& curve, double q_ref,
                     Direction direction = Direction::maximize);

/// Equally spaced time grid spanning from the latest curve start (step
/// interpolation cannot reach before a curve's first point) to the latest
/// curve end.
std::vector<TimeUnits> common_time_grid(std::span<const QualityCurve> curves,
                                        std::size_t n_points = 400);

/// Pointwise mean of the curves on the grid, each step-interpolated.
QualityCurve mean_curve(std::span<const QualityCurve> curves,
                        std::span<const TimeUnits> grid, std::string label);

/// Quality-increase and time-required percentages of a proposal arm against
/// an original arm, both given as mean curves on one common grid. TR points
/// where the proposal never attains the original quality are omitted.
struct ComparisonSeries {
  std::vector<TimeUnits> times;
  std::vector<double> quality_increase_pct;  // (Q_p / Q_o) * 100
  std::vector<TimeUnits> tr_times;
  std::vector<double> time_required_pct;     // (t_p / t_o) * 100

  std::string qi_to_csv() const;
  std::string tr_to_csv() const;
};

ComparisonSeries compare_curves(const QualityCurve& proposal,
                                const QualityCurve& original,
                                Direction direction = Direction::maximize);

/// Fraction of grid points where the proposal is at least as good.
double dominance_fraction(const QualityCurve& proposal, const QualityCurve& original,
                          Direction direction = Direction::maximize);

double median(std::vector<double> values);

}  // namespace optecot

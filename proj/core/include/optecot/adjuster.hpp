#pragma once

#include <functional>
#include <string>
#include <vector>

#include "optecot/types.hpp"

namespace optecot {

/// One accuracy query made by the bisection: the Spearman accuracy of the
/// approximation at the probed cost, and the evaluation time it consumed.
struct AccuracyProbe {
  double accuracy = 0.0;
  TimeUnits elapsed = 0.0;
};

using AccuracyFn = std::function<AccuracyProbe(double cost)>;

struct BisectionResult {
  double cost = 0.0;
  std::vector<double> midpoints_visited;
  std::vector<double> accuracies;
  TimeUnits elapsed = 0.0;

  /// Trace row `call_index,midpoints,accuracies,result_cost,elapsed`;
  /// list cells are ';'-joined.
  std::string to_csv_row(std::size_t call_index) const;
};

/// Interval-halving search for the lowest cost whose accuracy exceeds alpha.
/// Starts from [0, 1], keeps the lower half when the midpoint passes, and
/// stops once the interval is no longer than 0.1 -- exactly four queries.
/// Returns the last midpoint; when the accuracy oracle is monotone its
/// distance to the true threshold is below 2^-4.
BisectionResult bisect(const AccuracyFn& accuracy_fn, double alpha);

/// Time to evaluate one population at the original cost: |P| * t1.
TimeUnits population_eval_time(std::size_t pop_size, TimeUnits t1);

/// Worst-case time of one bisection application with |S| sample solutions:
/// |S| * (t1 + t_{0.5} + t_{0.75} + t_{0.875}) = |S| * (0.875*t0 + 3.125*t1),
/// assuming the ideal linear cost/time relation. The final midpoint's
/// evaluation is excluded; it is charged to the population evaluation.
TimeUnits worst_case_bisec_time(std::size_t sample_size, TimeUnits t0, TimeUnits t1);

struct BudgetPlan {
  std::size_t sample_size = 0;
  TimeUnits period = 0.0;
  TimeUnits t_original = 0.0;
  /// Worst case of one application at the planned sample size.
  TimeUnits t_bisec = 0.0;
};

/// Fixes the sample size and the adjustment period so that, in the worst
/// case, cost adjustment spends at most 25% of the available time. When one
/// application with |S| = 10 already exceeds a quarter of a full-cost
/// population evaluation, the sample stays at 10 and the period stretches to
/// 4 worst-case applications; otherwise the period is one full-cost
/// population evaluation and the sample grows to fill the quarter, clamped
/// to [2, pop_size].
BudgetPlan budget_plan(std::size_t pop_size, TimeUnits t0, TimeUnits t1);

}  // namespace optecot

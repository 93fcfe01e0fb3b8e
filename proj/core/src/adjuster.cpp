#include "optecot/adjuster.hpp"

#include <cmath>
#include <stdexcept>

#include "optecot/csv.hpp"

namespace optecot {

std::string BisectionResult::to_csv_row(std::size_t call_index) const {
  std::string mids, accs;
  for (std::size_t i = 0; i < midpoints_visited.size(); ++i) {
    if (i) {
      mids.push_back(';');
      accs.push_back(';');
    }
    mids += format_double(midpoints_visited[i]);
    accs += format_double(accuracies[i]);
  }
  return format_int(static_cast<long long>(call_index)) + "," + mids + "," +
         accs + "," + format_double(cost) + "," + format_double(elapsed);
}

BisectionResult bisect(const AccuracyFn& accuracy_fn, double alpha) {
  if (!(alpha > -1.0 && alpha < 1.0)) {
    throw std::invalid_argument("bisect: alpha must lie in (-1, 1)");
  }
  BisectionResult result;
  double lower = 0.0;
  double upper = 1.0;
  while (upper - lower > 0.1) {
    const double mid = (lower + upper) / 2.0;
    const AccuracyProbe probe = accuracy_fn(mid);
    result.midpoints_visited.push_back(mid);
    result.accuracies.push_back(probe.accuracy);
    result.elapsed += probe.elapsed;
    if (probe.accuracy > alpha) {
      upper = mid;
    } else {
      lower = mid;
    }
    result.cost = mid;
  }
  return result;
}

TimeUnits population_eval_time(std::size_t pop_size, TimeUnits t1) {
  if (pop_size < 1) throw std::invalid_argument("population_eval_time: empty population");
  if (!(t1 > 0.0)) throw std::invalid_argument("population_eval_time: t1 must be positive");
  return static_cast<double>(pop_size) * t1;
}

TimeUnits worst_case_bisec_time(std::size_t sample_size, TimeUnits t0, TimeUnits t1) {
  if (!(t0 >= 0.0) || !(t1 > t0)) {
    throw std::invalid_argument("worst_case_bisec_time: need 0 <= t0 < t1");
  }
  return static_cast<double>(sample_size) * (0.875 * t0 + 3.125 * t1);
}

BudgetPlan budget_plan(std::size_t pop_size, TimeUnits t0, TimeUnits t1) {
  if (!(t0 > 0.0) || !(t1 > t0)) {
    throw std::invalid_argument("budget_plan: need 0 < t0 < t1");
  }
  if (pop_size < 1) throw std::invalid_argument("budget_plan: empty population");

  BudgetPlan plan;
  plan.t_original = population_eval_time(pop_size, t1);
  const TimeUnits bisec_at_min = worst_case_bisec_time(10, t0, t1);
  if (bisec_at_min / plan.t_original > 0.25) {
    plan.sample_size = 10;
    plan.t_bisec = bisec_at_min;
    plan.period = 4.0 * plan.t_bisec;
  } else {
    const double unit = 0.875 * t0 + 3.125 * t1;
    auto size = static_cast<std::size_t>(std::floor(0.25 * plan.t_original / unit));
    if (size < 2) size = 2;
    if (size > pop_size) size = pop_size;
    plan.sample_size = size;
    plan.t_bisec = worst_case_bisec_time(size, t0, t1);
    plan.period = plan.t_original;
  }
  return plan;
}

}  // namespace optecot

#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "optecot/csv.hpp"
#include "optecot/rng.hpp"
#include "optecot/types.hpp"

namespace optecot {

/// Maps a normalized cost c in [0,1] to a concrete value of the parameter
/// that controls evaluation expense. theta0 is the cheapest value, theta1
/// the original one; the map is linear in the parameter accuracy a_c.
class ParameterMap {
 public:
  enum class Trend { theta1_greater, theta1_smaller };

  ParameterMap(double theta0, double theta1, bool integer_valued);

  double theta0() const { return theta0_; }
  double theta1() const { return theta1_; }
  bool integer_valued() const { return integer_valued_; }
  Trend trend() const {
    return theta1_ > theta0_ ? Trend::theta1_greater : Trend::theta1_smaller;
  }

  /// a_c = a0 + c * (1 - a0), with a0 the accuracy of theta0. Always in (0, 1].
  double accuracy_for_cost(double c) const;

  /// theta_c. Integer-valued parameters round to nearest and clamp to the
  /// [theta0, theta1] range so the endpoints stay exact.
  double param_for_cost(double c) const;

 private:
  double theta0_;
  double theta1_;
  bool integer_valued_;
};

struct CalibrationRow {
  double cost = 0.0;
  double theta = 0.0;
  TimeUnits mean_time = 0.0;
};

/// Empirical cost/time relation: one row per grid cost, mean evaluation time
/// measured over a fixed solution sample. Provides the piecewise-linear
/// time<->cost interpolation used to express bisection traces in either
/// domain.
class CalibrationTable {
 public:
  CalibrationTable(std::vector<CalibrationRow> rows, std::string time_unit);

  const std::vector<CalibrationRow>& rows() const { return rows_; }
  const std::string& time_unit() const { return time_unit_; }

  TimeUnits t0() const { return rows_.front().mean_time; }
  TimeUnits t1() const { return rows_.back().mean_time; }

  /// Piecewise-linear interpolation through the (mean_time, cost) nodes.
  /// Exact at nodes; throws std::out_of_range for t outside [t0, t1].
  double cost_for_time(TimeUnits t) const;

  /// Inverse of cost_for_time over the same nodes; strictly increasing.
  TimeUnits time_for_cost(double c) const;

  std::string to_csv() const;
  static CalibrationTable from_csv_text(const std::string& text);
  void save(const std::filesystem::path& path) const;
  static CalibrationTable load(const std::filesystem::path& path);

 private:
  std::vector<CalibrationRow> rows_;
  std::string time_unit_;
};

/// n equidistant costs covering [0, 1].
std::vector<double> default_cost_grid(std::size_t n = 10);

inline void require_cost_in_range(double c, const char* where) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw std::out_of_range(std::string(where) + ": cost " + format_double(c) +
                            " outside [0, 1]");
  }
}

/// The fixed solution sample shared by calibration and the suitability
/// report: same seed, same solutions.
template <class P>
std::vector<typename P::solution_type> sample_solutions(const P& problem,
                                                        std::size_t n,
                                                        std::uint64_t seed) {
  Rng sampler(mix64(seed, 0xCA11));
  std::vector<typename P::solution_type> sample;
  sample.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    sample.push_back(problem.sample(sampler));
  }
  return sample;
}

/// Evaluation seed paired with sample_solutions.
inline std::uint64_t calibration_eval_seed(std::uint64_t seed) {
  return mix64(seed, 0xE7A1);
}

/// Sorted, deduplicated grid; must cover costs 0 and 1.
std::vector<double> normalize_grid(std::span<const double> grid, const char* where);

/// Measures mean evaluation time at every grid cost over one fixed sample of
/// n_solutions random solutions. Throws if any adjacent mean-time regression
/// exceeds `tolerance` (a fraction of t1), which signals that the parameter
/// is not a suitable cost index. Regressions or ties within tolerance are
/// repaired by a minimal upward nudge so the table stays strictly monotone.
template <class P>
CalibrationTable calibrate(const P& problem, std::size_t n_solutions,
                           std::span<const double> grid, std::uint64_t seed,
                           double tolerance = 0.01) {
  if (n_solutions < 1) {
    throw std::invalid_argument("calibrate: need at least one solution");
  }
  const std::vector<double> costs = normalize_grid(grid, "calibrate");
  const auto sample = sample_solutions(problem, n_solutions, seed);
  const std::uint64_t eval_seed = calibration_eval_seed(seed);

  std::vector<CalibrationRow> rows;
  rows.reserve(costs.size());
  for (double c : costs) {
    const double theta = problem.parameter_map().param_for_cost(c);
    TimeUnits total = 0.0;
    for (const auto& x : sample) {
      total += problem.evaluate(x, theta, eval_seed).elapsed;
    }
    rows.push_back({c, theta, total / static_cast<double>(n_solutions)});
  }

  const TimeUnits t1 = rows.back().mean_time;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const TimeUnits regression = rows[i - 1].mean_time - rows[i].mean_time;
    if (regression > tolerance * t1) {
      throw std::runtime_error(
          "calibrate: mean time regresses by " + format_double(regression) +
          " between costs " + format_double(rows[i - 1].cost) + " and " +
          format_double(rows[i].cost) +
          "; parameter is not a suitable cost index");
    }
    if (rows[i].mean_time <= rows[i - 1].mean_time) {
      rows[i].mean_time = rows[i - 1].mean_time * (1.0 + 1e-12) +
                          std::numeric_limits<double>::min();
    }
  }
  return CalibrationTable(std::move(rows), problem.time_unit());
}

}  // namespace optecot

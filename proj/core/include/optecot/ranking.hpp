#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "optecot/problem.hpp"
#include "optecot/types.hpp"

namespace optecot {

/// Best-first ordering of solution indexes: order[k] is the index of the
/// k-th best solution under the problem direction.
struct Ranking {
  std::vector<std::size_t> order;

  std::size_t size() const { return order.size(); }

  /// Inverse permutation: positions()[i] is the rank position of solution i.
  std::vector<std::size_t> positions() const;
};

/// Stable best-first argsort. Ties keep ascending original index. Throws on
/// NaN, naming the offending index.
Ranking argsort_scores(std::span<const double> scores, Direction direction);

/// Average ranks (0-based, best first) with ties sharing the mean of the
/// positions they straddle. This is the rank vector Spearman runs on.
std::vector<double> average_ranks(std::span<const double> scores, Direction direction);

/// Spearman correlation between the rank vectors induced by two orderings.
/// 1 for identical orderings, -1 for exact reversal.
double spearman(const Ranking& a, const Ranking& b);

/// Spearman correlation of two score lists over the same solutions, with
/// tied scores receiving average ranks. Identical lists give exactly 1.
/// If exactly one side is all-tied there is no rank information and the
/// result is 0; if both are all-tied the orderings agree trivially and the
/// result is 1.
double spearman_scores(std::span<const double> scores_a,
                       std::span<const double> scores_b, Direction direction);

/// Accuracy of the cost-c approximation over a sample, plus the raw scores
/// and per-cost elapsed totals so callers can reuse them for budget
/// accounting.
struct AccuracyReport {
  double value = 0.0;
  std::vector<double> scores_at_cost;
  std::vector<double> scores_at_full;
  TimeUnits elapsed_at_cost = 0.0;
  TimeUnits elapsed_at_full = 0.0;
};

template <class S>
AccuracyReport accuracy(const Problem<S>& problem, std::span<const S> sample,
                        double cost, std::uint64_t seed) {
  if (sample.size() < 2) {
    throw std::invalid_argument("accuracy: need a sample of at least 2 solutions");
  }
  require_cost_in_range(cost, "accuracy");
  const double theta_c = problem.parameter_map().param_for_cost(cost);
  const double theta_1 = problem.parameter_map().theta1();

  AccuracyReport report;
  report.scores_at_cost.reserve(sample.size());
  report.scores_at_full.reserve(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    try {
      const Evaluation at_c = problem.evaluate(sample[i], theta_c, seed);
      report.scores_at_cost.push_back(at_c.score);
      report.elapsed_at_cost += at_c.elapsed;
      const Evaluation at_1 = problem.evaluate(sample[i], theta_1, seed);
      report.scores_at_full.push_back(at_1.score);
      report.elapsed_at_full += at_1.elapsed;
    } catch (const std::exception& e) {
      throw std::runtime_error("accuracy: evaluation of sample solution " +
                               std::to_string(i) + " failed: " + e.what());
    }
  }
  report.value = spearman_scores(report.scores_at_cost, report.scores_at_full,
                                 problem.direction());
  return report;
}

/// Normalized rank displacement of every solution at every grid cost:
/// entry (i, c) = |pos_c(i) - pos_1(i)| / (n - 1). The c = 1 column of
/// values is all zeros.
struct RankingDistanceMatrix {
  std::vector<double> costs;
  std::size_t n_solutions = 0;
  /// values[cost_index][solution_index]
  std::vector<std::vector<double>> values;

  std::string to_csv() const;
};

template <class S>
RankingDistanceMatrix ranking_distance_matrix(const Problem<S>& problem,
                                              std::span<const S> solutions,
                                              std::span<const double> grid,
                                              std::uint64_t seed) {
  if (solutions.size() < 2) {
    throw std::invalid_argument(
        "ranking_distance_matrix: need at least 2 solutions");
  }
  const double theta_1 = problem.parameter_map().theta1();
  std::vector<double> full_scores(solutions.size());
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    full_scores[i] = problem.evaluate(solutions[i], theta_1, seed).score;
  }
  const std::vector<std::size_t> pos_full =
      argsort_scores(full_scores, problem.direction()).positions();

  RankingDistanceMatrix matrix;
  matrix.costs.assign(grid.begin(), grid.end());
  matrix.n_solutions = solutions.size();
  const double denom = static_cast<double>(solutions.size() - 1);
  for (double c : matrix.costs) {
    require_cost_in_range(c, "ranking_distance_matrix");
    const double theta_c = problem.parameter_map().param_for_cost(c);
    std::vector<double> scores(solutions.size());
    for (std::size_t i = 0; i < solutions.size(); ++i) {
      scores[i] = problem.evaluate(solutions[i], theta_c, seed).score;
    }
    const std::vector<std::size_t> pos_c =
        argsort_scores(scores, problem.direction()).positions();
    std::vector<double> row(solutions.size());
    for (std::size_t i = 0; i < solutions.size(); ++i) {
      const double d = pos_c[i] >= pos_full[i]
                           ? static_cast<double>(pos_c[i] - pos_full[i])
                           : static_cast<double>(pos_full[i] - pos_c[i]);
      row[i] = d / denom;
    }
    matrix.values.push_back(std::move(row));
  }
  return matrix;
}

}  // namespace optecot

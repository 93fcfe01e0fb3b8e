#pragma once

#include <filesystem>
#include <vector>

#include "optecot/gp.hpp"
#include "optecot/problem.hpp"

namespace optecot::problems {

struct SrDataPoint {
  std::vector<double> inputs;
  double target = 0.0;
};

struct SymbolicRegressionOptions {
  std::size_t n_points = 50;
  std::size_t n_vars = 2;
  double noise_scale = 0.01;     // bounded uniform noise on the targets
  std::uint64_t dataset_seed = 2024;
  std::size_t theta0 = 5;        // smallest training subset
};

/// Symbolic regression over a fixed dataset; the cost-indexed parameter is
/// the training subset size. Subsets are prefixes of a seed-shuffled copy of
/// the dataset so rankings at equal theta stay comparable. Scores are
/// negated mean absolute errors, so the problem maximizes. Elapsed time is
/// the subset size (proxy units).
class SymbolicRegression final : public Problem<GpTree> {
 public:
  explicit SymbolicRegression(SymbolicRegressionOptions options = {});

  /// Dataset supplied explicitly; rows are used in the given order.
  SymbolicRegression(std::vector<SrDataPoint> dataset, std::size_t theta0);

  std::string name() const override { return "sr"; }
  Direction direction() const override { return Direction::maximize; }
  const ParameterMap& parameter_map() const override { return map_; }
  std::string time_unit() const override { return "points"; }

  GpTree sample(Rng& rng) const override;
  Evaluation evaluate(const GpTree& tree, double theta, std::uint64_t seed) const override;

  const std::vector<SrDataPoint>& dataset() const { return dataset_; }
  std::size_t n_vars() const { return n_vars_; }

  /// The expression the default dataset is generated from:
  /// y = x1*x1 - 0.7*x1*x2 + x2 (+ bounded noise).
  static GpTree ground_truth();
  static double ground_truth_value(std::span<const double> inputs);

  std::string dataset_to_csv() const;
  static std::vector<SrDataPoint> dataset_from_csv(const std::filesystem::path& path);

 private:
  std::vector<SrDataPoint> dataset_;
  std::size_t n_vars_;
  ParameterMap map_;
};

}  // namespace optecot::problems

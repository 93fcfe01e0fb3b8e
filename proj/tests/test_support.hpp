#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "optecot/problem.hpp"
#include "optecot/rbea.hpp"
#include "optecot/rng.hpp"

namespace optecot::testing {

/// Toy problem over scalar solutions whose evaluator reports elapsed == theta
/// exactly. Score defaults to x (theta-independent); a custom score function
/// can model approximation error.
class LinearTimeProblem final : public Problem<double> {
 public:
  using ScoreFn = std::function<double(double x, double theta)>;

  LinearTimeProblem(double theta0, double theta1, bool integer_valued,
                    ScoreFn score = nullptr)
      : map_(theta0, theta1, integer_valued),
        score_(score ? std::move(score) : [](double x, double) { return x; }) {}

  std::string name() const override { return "linear_time_toy"; }
  Direction direction() const override { return Direction::maximize; }
  const ParameterMap& parameter_map() const override { return map_; }
  std::string time_unit() const override { return "units"; }

  double sample(Rng& rng) const override { return rng.uniform01(); }

  Evaluation evaluate(const double& x, double theta, std::uint64_t) const override {
    return {score_(x, theta), theta};
  }

 private:
  ParameterMap map_;
  ScoreFn score_;
};

/// Problem over integer solution ids with scripted scores; elapsed == theta.
/// Used to drive the controller through hand-simulated event sequences.
class ScriptedProblem final : public Problem<int> {
 public:
  using ScoreFn = std::function<double(int id, double theta)>;

  ScriptedProblem(double theta0, double theta1, ScoreFn score)
      : map_(theta0, theta1, /*integer_valued=*/false), score_(std::move(score)) {}

  std::string name() const override { return "scripted"; }
  Direction direction() const override { return Direction::maximize; }
  const ParameterMap& parameter_map() const override { return map_; }
  std::string time_unit() const override { return "units"; }

  int sample(Rng& rng) const override { return static_cast<int>(rng.below(1000)); }

  Evaluation evaluate(const int& id, double theta, std::uint64_t) const override {
    return {score_(id, theta), theta};
  }

 private:
  ParameterMap map_;
  ScoreFn score_;
};

/// Engine that replays a fixed population script; after the script runs out
/// the last population repeats.
class ScriptedEngine final : public RbeaEngine<int> {
 public:
  explicit ScriptedEngine(std::vector<std::vector<int>> script)
      : script_(std::move(script)) {}

  std::vector<int> ask() override {
    const std::size_t k = std::min(told_, script_.size() - 1);
    return script_[k];
  }
  void tell(std::span<const double>) override { ++told_; }
  std::size_t population_size() const override { return script_.front().size(); }
  std::uint64_t state_digest() const override { return told_; }

 private:
  std::vector<std::vector<int>> script_;
  std::size_t told_ = 0;
};

/// Strictly increasing piecewise-linear transform with random knots and
/// positive slopes.
class IncreasingPiecewiseLinear {
 public:
  IncreasingPiecewiseLinear(Rng& rng, double lo, double hi, std::size_t segments = 5) {
    knots_x_.push_back(lo - 1.0);
    knots_y_.push_back(rng.uniform(-5.0, 5.0));
    const double span = (hi + 1.0) - (lo - 1.0);
    for (std::size_t i = 1; i <= segments; ++i) {
      knots_x_.push_back(lo - 1.0 + span * static_cast<double>(i) /
                                        static_cast<double>(segments));
      const double slope = rng.uniform(0.1, 3.0);
      knots_y_.push_back(knots_y_.back() +
                         slope * (knots_x_[i] - knots_x_[i - 1]));
    }
  }

  double operator()(double x) const {
    std::size_t k = 1;
    while (k + 1 < knots_x_.size() && x > knots_x_[k]) ++k;
    const double slope =
        (knots_y_[k] - knots_y_[k - 1]) / (knots_x_[k] - knots_x_[k - 1]);
    return knots_y_[k - 1] + slope * (x - knots_x_[k - 1]);
  }

  std::vector<double> operator()(std::span<const double> xs) const {
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back((*this)(x));
    return out;
  }

 private:
  std::vector<double> knots_x_;
  std::vector<double> knots_y_;
};

}  // namespace optecot::testing

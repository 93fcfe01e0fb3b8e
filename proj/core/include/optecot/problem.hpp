#pragma once

#include <cstdint>
#include <string>

#include "optecot/cost_model.hpp"
#include "optecot/rng.hpp"
#include "optecot/types.hpp"

namespace optecot {

/// A black-box objective family f(x; theta). Evaluation must be a pure
/// function of (solution, theta, seed); elapsed is reported by the evaluator
/// itself (deterministic proxy units by default). Instances are immutable
/// after construction and safe to share across threads.
template <class S>
class Problem {
 public:
  using solution_type = S;

  virtual ~Problem() = default;

  virtual std::string name() const = 0;
  virtual Direction direction() const = 0;
  virtual const ParameterMap& parameter_map() const = 0;
  virtual std::string time_unit() const = 0;

  /// One uniformly random feasible solution.
  virtual S sample(Rng& rng) const = 0;

  virtual Evaluation evaluate(const S& x, double theta, std::uint64_t seed) const = 0;

  /// Evaluate at the original parameter value theta1.
  Evaluation evaluate_full(const S& x, std::uint64_t seed) const {
    return evaluate(x, parameter_map().theta1(), seed);
  }
};

}  // namespace optecot

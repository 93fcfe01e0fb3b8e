#pragma once

#include "optecot/cmaes.hpp"
#include "optecot/problem.hpp"

namespace optecot::problems {

struct McSphereOptions {
  std::size_t dimension = 6;
  RealVector center;            // defaults to a fixed off-origin point
  double noise_scale = 0.01;    // bound of the zero-mean uniform probe noise
  double box_half_width = 1.0;  // sampler draws from [-w, w]^dim
  std::size_t theta0 = 1;
  std::size_t theta1 = 1000;
};

/// Synthetic Monte Carlo sphere: the exact objective is -(distance to
/// center)^2 and an evaluation averages theta noisy probes of it. The probe
/// noise is bounded and zero-mean, drawn from a stream keyed by
/// (seed, solution), so evaluations are pure functions of
/// (solution, theta, seed). Elapsed time is theta (proxy units).
class McSphere final : public Problem<RealVector> {
 public:
  explicit McSphere(McSphereOptions options = {});

  std::string name() const override { return "mcsphere"; }
  Direction direction() const override { return Direction::maximize; }
  const ParameterMap& parameter_map() const override { return map_; }
  std::string time_unit() const override { return "probes"; }

  RealVector sample(Rng& rng) const override;
  Evaluation evaluate(const RealVector& x, double theta, std::uint64_t seed) const override;

  /// Exact objective; an out-of-band oracle that is never charged time.
  double true_objective(const RealVector& x) const;

  const McSphereOptions& options() const { return options_; }
  std::pair<RealVector, RealVector> bounds() const;

 private:
  McSphereOptions options_;
  ParameterMap map_;
};

}  // namespace optecot::problems

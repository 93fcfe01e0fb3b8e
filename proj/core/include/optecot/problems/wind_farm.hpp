#pragma once

#include "optecot/cmaes.hpp"
#include "optecot/problem.hpp"

namespace optecot::problems {

struct WindFarmOptions {
  std::size_t n_turbines = 5;
  double field_size = 1000.0;     // square side, meters
  double rotor_diameter = 80.0;
  double hub_wind_speed = 12.0;   // free-stream speed, m/s
  double wake_amplitude = 0.6;    // deficit at the wake centerline origin
  double wake_expansion = 0.05;   // linear growth of the wake width
  double overlap_penalty = 1e6;
  std::size_t theta0 = 1;         // fewest Monte Carlo points
  std::size_t theta1 = 1000;
};

/// Simplified wind-farm layout problem: one dominant wind direction along +x,
/// an isotropic Gaussian wake deficit with linear expansion, and total energy
/// estimated by Monte Carlo integration of the effective wind speed cubed
/// over each rotor disc. The cost-indexed parameter is the number of Monte
/// Carlo points per rotor. A layout is the flat vector
/// (x_1, y_1, ..., x_k, y_k); coordinates are clipped into the field.
/// Elapsed time is theta * n_turbines (proxy units).
class WindFarm final : public Problem<RealVector> {
 public:
  explicit WindFarm(WindFarmOptions options = {});

  std::string name() const override { return "windfarm"; }
  Direction direction() const override { return Direction::maximize; }
  const ParameterMap& parameter_map() const override { return map_; }
  std::string time_unit() const override { return "mc_points"; }

  RealVector sample(Rng& rng) const override;
  Evaluation evaluate(const RealVector& layout, double theta,
                      std::uint64_t seed) const override;

  const WindFarmOptions& options() const { return options_; }
  std::size_t dimension() const { return 2 * options_.n_turbines; }

  /// Nominal (wake-free) power of one turbine; a single-turbine layout
  /// scores exactly this.
  double nominal_power() const;

  /// Combined wake deficit at a rotor point of turbine `i` from all
  /// upstream turbines. Exposed so tests can integrate it independently.
  double deficit_at(const RealVector& layout, std::size_t i, double lateral_offset) const;

  /// Feasible box for the optimizer.
  std::pair<RealVector, RealVector> bounds() const;

 private:
  WindFarmOptions options_;
  ParameterMap map_;
};

}  // namespace optecot::problems

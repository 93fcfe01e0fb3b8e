#include "optecot/problems/wind_farm.hpp"

#include <cmath>
#include <stdexcept>

namespace optecot::problems {

WindFarm::WindFarm(WindFarmOptions options)
    : options_(options),
      map_(static_cast<double>(options.theta0), static_cast<double>(options.theta1),
           /*integer_valued=*/true) {
  if (options_.n_turbines < 1) {
    throw std::invalid_argument("WindFarm: need at least one turbine");
  }
  if (!(options_.field_size > options_.rotor_diameter)) {
    throw std::invalid_argument("WindFarm: field smaller than a rotor");
  }
}

RealVector WindFarm::sample(Rng& rng) const {
  RealVector layout(dimension());
  for (double& v : layout) v = rng.uniform(0.0, options_.field_size);
  return layout;
}

double WindFarm::nominal_power() const {
  return std::pow(options_.hub_wind_speed, 3.0);
}

double WindFarm::deficit_at(const RealVector& layout, std::size_t i,
                            double lateral_offset) const {
  const double xi = layout[2 * i];
  const double yi = layout[2 * i + 1] + lateral_offset;
  double sum_sq = 0.0;
  for (std::size_t j = 0; j < options_.n_turbines; ++j) {
    if (j == i) continue;
    const double dx = xi - layout[2 * j];
    if (dx <= 0.0) continue;  // only upstream turbines cast a wake
    const double r = yi - layout[2 * j + 1];
    const double sigma0 = options_.rotor_diameter / 2.0;
    const double sigma = sigma0 + options_.wake_expansion * dx;
    const double deficit = options_.wake_amplitude * (sigma0 / sigma) *
                           std::exp(-(r * r) / (2.0 * sigma * sigma));
    sum_sq += deficit * deficit;
  }
  return std::min(1.0, std::sqrt(sum_sq));
}

Evaluation WindFarm::evaluate(const RealVector& layout, double theta,
                              std::uint64_t seed) const {
  if (layout.size() != dimension()) {
    throw std::invalid_argument("WindFarm: layout dimension mismatch");
  }
  const auto points = static_cast<std::size_t>(std::llround(theta));
  if (points < 1 || points > static_cast<std::size_t>(map_.theta1())) {
    throw std::out_of_range("WindFarm: monte carlo points " +
                            std::to_string(points) + " outside range");
  }
  const TimeUnits elapsed =
      static_cast<TimeUnits>(points) * static_cast<double>(options_.n_turbines);

  // Overlapping rotors: heavily penalized, not an error.
  for (std::size_t i = 0; i < options_.n_turbines; ++i) {
    for (std::size_t j = i + 1; j < options_.n_turbines; ++j) {
      const double dx = layout[2 * i] - layout[2 * j];
      const double dy = layout[2 * i + 1] - layout[2 * j + 1];
      if (std::sqrt(dx * dx + dy * dy) < options_.rotor_diameter) {
        return {-options_.overlap_penalty, elapsed};
      }
    }
  }

  Rng rng(mix64(seed, fnv1a(std::span<const double>(layout.data(), layout.size()))));
  const double half = options_.rotor_diameter / 2.0;
  double total = 0.0;
  for (std::size_t i = 0; i < options_.n_turbines; ++i) {
    double acc = 0.0;
    for (std::size_t p = 0; p < points; ++p) {
      const double offset = rng.uniform(-half, half);
      const double deficit = deficit_at(layout, i, offset);
      const double u = options_.hub_wind_speed * (1.0 - deficit);
      acc += u * u * u;
    }
    total += acc / static_cast<double>(points);
  }
  return {total, elapsed};
}

std::pair<RealVector, RealVector> WindFarm::bounds() const {
  return {RealVector(dimension(), 0.0), RealVector(dimension(), options_.field_size)};
}

}  // namespace optecot::problems

#include "optecot/problems/mc_sphere.hpp"

#include <cmath>
#include <stdexcept>

namespace optecot::problems {

McSphere::McSphere(McSphereOptions options)
    : options_(std::move(options)),
      map_(static_cast<double>(options_.theta0), static_cast<double>(options_.theta1),
           /*integer_valued=*/true) {
  if (options_.dimension < 1) {
    throw std::invalid_argument("McSphere: dimension must be >= 1");
  }
  if (options_.center.empty()) {
    options_.center.resize(options_.dimension);
    for (std::size_t i = 0; i < options_.dimension; ++i) {
      // fixed off-origin center, inside the default box
      options_.center[i] = (i % 2 == 0 ? 0.4 : -0.3) + 0.05 * static_cast<double>(i);
    }
  }
  if (options_.center.size() != options_.dimension) {
    throw std::invalid_argument("McSphere: center dimension mismatch");
  }
  if (options_.noise_scale < 0.0) {
    throw std::invalid_argument("McSphere: noise scale must be >= 0");
  }
}

RealVector McSphere::sample(Rng& rng) const {
  RealVector x(options_.dimension);
  for (double& v : x) {
    v = rng.uniform(-options_.box_half_width, options_.box_half_width);
  }
  return x;
}

double McSphere::true_objective(const RealVector& x) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < options_.dimension; ++i) {
    const double d = x[i] - options_.center[i];
    acc += d * d;
  }
  return -acc;
}

Evaluation McSphere::evaluate(const RealVector& x, double theta,
                              std::uint64_t seed) const {
  if (x.size() != options_.dimension) {
    throw std::invalid_argument("McSphere: solution dimension mismatch");
  }
  const auto probes = static_cast<std::size_t>(std::llround(theta));
  if (probes < 1 || probes > static_cast<std::size_t>(map_.theta1())) {
    throw std::out_of_range("McSphere: probe count " + std::to_string(probes) +
                            " outside range");
  }
  const double truth = true_objective(x);
  if (options_.noise_scale == 0.0) {
    return {truth, static_cast<TimeUnits>(probes)};
  }
  Rng rng(mix64(seed, fnv1a(std::span<const double>(x.data(), x.size()))));
  double acc = 0.0;
  for (std::size_t p = 0; p < probes; ++p) {
    acc += truth + rng.uniform(-options_.noise_scale, options_.noise_scale);
  }
  return {acc / static_cast<double>(probes), static_cast<TimeUnits>(probes)};
}

std::pair<RealVector, RealVector> McSphere::bounds() const {
  return {RealVector(options_.dimension, -options_.box_half_width),
          RealVector(options_.dimension, options_.box_half_width)};
}

}  // namespace optecot::problems

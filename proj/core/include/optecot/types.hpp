#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace optecot {

/// Direction of the underlying optimization problem. All ranking operations
/// order candidates best-first with respect to this.
enum class Direction { maximize, minimize };

inline std::string to_string(Direction d) {
  return d == Direction::maximize ? "maximize" : "minimize";
}

/// Abstract time units. Benchmark problems report a deterministic proxy
/// (inner work units such as Monte Carlo draws) by default; wall-clock
/// seconds are an opt-in.
using TimeUnits = double;

/// Result of evaluating one solution at one parameter value.
struct Evaluation {
  double score = 0.0;
  TimeUnits elapsed = 0.0;
};

}  // namespace optecot

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace optecot {

/// Ask/tell interface for rank-based evolutionary engines. ask() returns
/// exactly population_size() candidates; tell() may use the scores only
/// through their ranking, so any strictly increasing transform of the scores
/// leaves the next population unchanged. Engines are single-owner sequential
/// state machines.
template <class S>
class RbeaEngine {
 public:
  using solution_type = S;

  virtual ~RbeaEngine() = default;

  virtual std::vector<S> ask() = 0;
  virtual void tell(std::span<const double> scores) = 0;
  virtual std::size_t population_size() const = 0;

  /// Hash of the full internal state (search distribution or parent pool
  /// plus RNG); equal digests imply identical future behaviour.
  virtual std::uint64_t state_digest() const = 0;
};

}  // namespace optecot

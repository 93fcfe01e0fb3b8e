#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "optecot/rbea.hpp"
#include "optecot/rng.hpp"
#include "optecot/types.hpp"

namespace optecot {

enum class GpOp : std::uint8_t { add, sub, mul, div, var, constant };

struct GpNode {
  GpOp op = GpOp::constant;
  std::uint16_t var_index = 0;
  double value = 0.0;

  bool operator==(const GpNode&) const = default;
  static int arity(GpOp op) {
    return (op == GpOp::var || op == GpOp::constant) ? 0 : 2;
  }
};

/// Expression tree in prefix order over {+, -, *, protected /}, input
/// variables and constants.
struct GpTree {
  std::vector<GpNode> nodes;

  bool operator==(const GpTree&) const = default;

  double evaluate(std::span<const double> inputs) const;
  std::size_t depth() const;
  std::uint64_t hash() const;
  std::string to_string() const;

  /// Index one past the subtree rooted at `pos`.
  std::size_t subtree_end(std::size_t pos) const;
  /// 1-based depth of every node (root is 1).
  std::vector<std::size_t> node_depths() const;
};

struct GpTreeGen {
  std::size_t n_vars = 1;
  std::vector<double> constant_pool{-2.0, -1.0, -0.5, 0.5, 1.0, 2.0, 3.0};
  double p_terminal = 0.3;  // chance of cutting a branch early in grow mode
};

/// Random expression tree: `full` expands operators until the depth limit,
/// grow mode may stop early at terminals.
GpTree random_gp_tree(Rng& rng, const GpTreeGen& gen, std::size_t depth_limit,
                      bool full);

struct GpEngineOptions {
  std::size_t n_vars = 0;
  std::size_t pop_size = 0;
  std::size_t max_depth = 8;
  std::size_t init_depth_min = 2;
  std::size_t init_depth_max = 6;
  double truncation_fraction = 0.5;  // top fraction kept as parents
  double p_crossover = 0.9;          // otherwise subtree mutation
  std::vector<double> constant_pool{-2.0, -1.0, -0.5, 0.5, 1.0, 2.0, 3.0};
  Direction direction = Direction::maximize;
  std::uint64_t seed = 0;
};

/// Truncation-selection genetic programming engine: the top fraction by rank
/// becomes the parent pool; offspring come from subtree crossover and subtree
/// mutation, both respecting the maximum depth. Initialization is ramped
/// half-and-half.
class GpEngine final : public RbeaEngine<GpTree> {
 public:
  explicit GpEngine(GpEngineOptions options);

  std::vector<GpTree> ask() override;
  void tell(std::span<const double> scores) override;
  std::size_t population_size() const override { return options_.pop_size; }
  std::uint64_t state_digest() const override;

  const GpEngineOptions& options() const { return options_; }

 private:
  GpTree random_tree(std::size_t depth_limit, bool full);
  GpTree crossover(const GpTree& a, const GpTree& b);
  GpTree subtree_mutation(const GpTree& parent);

  GpEngineOptions options_;
  Rng rng_;
  std::vector<GpTree> population_;
  bool initialized_ = false;
};

}  // namespace optecot

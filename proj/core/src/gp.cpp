#include "optecot/gp.hpp"

#include <cmath>
#include <stdexcept>

#include "optecot/csv.hpp"
#include "optecot/ranking.hpp"

namespace optecot {

double GpTree::evaluate(std::span<const double> inputs) const {
  // Prefix evaluation right-to-left; the first pop is the left operand.
  std::vector<double> stack;
  stack.reserve(8);
  for (std::size_t k = nodes.size(); k-- > 0;) {
    const GpNode& node = nodes[k];
    switch (node.op) {
      case GpOp::constant:
        stack.push_back(node.value);
        break;
      case GpOp::var:
        stack.push_back(inputs[node.var_index]);
        break;
      default: {
        const double a = stack.back();
        stack.pop_back();
        const double b = stack.back();
        stack.pop_back();
        double r = 0.0;
        switch (node.op) {
          case GpOp::add: r = a + b; break;
          case GpOp::sub: r = a - b; break;
          case GpOp::mul: r = a * b; break;
          case GpOp::div: r = std::fabs(b) < 1e-6 ? 1.0 : a / b; break;
          default: break;
        }
        stack.push_back(r);
      }
    }
  }
  return stack.back();
}

std::size_t GpTree::subtree_end(std::size_t pos) const {
  std::size_t needed = 1;
  std::size_t k = pos;
  while (needed > 0) {
    needed += static_cast<std::size_t>(GpNode::arity(nodes[k].op));
    --needed;
    ++k;
  }
  return k;
}

std::vector<std::size_t> GpTree::node_depths() const {
  std::vector<std::size_t> depths(nodes.size());
  std::vector<std::size_t> stack;  // depths of pending child slots
  stack.push_back(1);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const std::size_t d = stack.back();
    stack.pop_back();
    depths[k] = d;
    for (int i = 0; i < GpNode::arity(nodes[k].op); ++i) {
      stack.push_back(d + 1);
    }
  }
  return depths;
}

std::size_t GpTree::depth() const {
  std::size_t max_depth = 0;
  for (std::size_t d : node_depths()) max_depth = std::max(max_depth, d);
  return max_depth;
}

std::uint64_t GpTree::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const GpNode& node : nodes) {
    const auto op = static_cast<std::uint8_t>(node.op);
    h = fnv1a(&op, sizeof(op), h);
    h = fnv1a(&node.var_index, sizeof(node.var_index), h);
    h = fnv1a(&node.value, sizeof(node.value), h);
  }
  return h;
}

namespace {

std::size_t print_node(const GpTree& tree, std::size_t pos, std::string& out) {
  const GpNode& node = tree.nodes[pos];
  switch (node.op) {
    case GpOp::constant:
      out += format_double(node.value);
      return pos + 1;
    case GpOp::var:
      out += "x" + std::to_string(node.var_index + 1);
      return pos + 1;
    default: {
      const char* sym = node.op == GpOp::add   ? " + "
                        : node.op == GpOp::sub ? " - "
                        : node.op == GpOp::mul ? " * "
                                               : " / ";
      out.push_back('(');
      std::size_t next = print_node(tree, pos + 1, out);
      out += sym;
      next = print_node(tree, next, out);
      out.push_back(')');
      return next;
    }
  }
}

}  // namespace

std::string GpTree::to_string() const {
  std::string out;
  print_node(*this, 0, out);
  return out;
}

GpEngine::GpEngine(GpEngineOptions options)
    : options_(std::move(options)), rng_(mix64(options_.seed, 0x69B0)) {
  if (options_.n_vars < 1) throw std::invalid_argument("GpEngine: n_vars must be >= 1");
  if (options_.pop_size < 2) throw std::invalid_argument("GpEngine: pop_size must be >= 2");
  if (options_.constant_pool.empty()) {
    throw std::invalid_argument("GpEngine: constant pool must not be empty");
  }
  if (options_.init_depth_max > options_.max_depth) {
    options_.init_depth_max = options_.max_depth;
  }
  if (options_.init_depth_min < 1) options_.init_depth_min = 1;
  if (!(options_.truncation_fraction > 0.0 && options_.truncation_fraction <= 1.0)) {
    throw std::invalid_argument("GpEngine: truncation fraction must lie in (0, 1]");
  }
}

namespace {

void grow_into(Rng& rng, const GpTreeGen& gen, GpTree& tree,
               std::size_t remaining_depth, bool full) {
  const bool must_terminal = remaining_depth <= 1;
  const bool pick_terminal =
      must_terminal || (!full && rng.uniform01() < gen.p_terminal);
  if (pick_terminal) {
    GpNode node;
    if (rng.uniform01() < 0.5) {
      node.op = GpOp::var;
      node.var_index = static_cast<std::uint16_t>(rng.below(gen.n_vars));
    } else {
      node.op = GpOp::constant;
      node.value = gen.constant_pool[rng.below(gen.constant_pool.size())];
    }
    tree.nodes.push_back(node);
    return;
  }
  GpNode node;
  switch (rng.below(4)) {
    case 0: node.op = GpOp::add; break;
    case 1: node.op = GpOp::sub; break;
    case 2: node.op = GpOp::mul; break;
    default: node.op = GpOp::div; break;
  }
  tree.nodes.push_back(node);
  grow_into(rng, gen, tree, remaining_depth - 1, full);
  grow_into(rng, gen, tree, remaining_depth - 1, full);
}

}  // namespace

GpTree random_gp_tree(Rng& rng, const GpTreeGen& gen, std::size_t depth_limit,
                      bool full) {
  GpTree tree;
  grow_into(rng, gen, tree, std::max<std::size_t>(depth_limit, 1), full);
  return tree;
}

GpTree GpEngine::random_tree(std::size_t depth_limit, bool full) {
  GpTreeGen gen{options_.n_vars, options_.constant_pool, 0.3};
  return random_gp_tree(rng_, gen, depth_limit, full);
}

std::vector<GpTree> GpEngine::ask() {
  if (!initialized_) {
    population_.clear();
    population_.reserve(options_.pop_size);
    const std::size_t span = options_.init_depth_max - options_.init_depth_min + 1;
    for (std::size_t i = 0; i < options_.pop_size; ++i) {
      const std::size_t depth = options_.init_depth_min + i % span;
      const bool full = (i / span) % 2 == 0;
      population_.push_back(random_tree(depth, full));
    }
    initialized_ = true;
  }
  return population_;
}

GpTree GpEngine::crossover(const GpTree& a, const GpTree& b) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    const std::size_t ia = static_cast<std::size_t>(rng_.below(a.nodes.size()));
    const std::size_t ib = static_cast<std::size_t>(rng_.below(b.nodes.size()));
    GpTree child;
    const std::size_t a_end = a.subtree_end(ia);
    const std::size_t b_end = b.subtree_end(ib);
    child.nodes.reserve(a.nodes.size() - (a_end - ia) + (b_end - ib));
    child.nodes.insert(child.nodes.end(), a.nodes.begin(),
                       a.nodes.begin() + static_cast<std::ptrdiff_t>(ia));
    child.nodes.insert(child.nodes.end(),
                       b.nodes.begin() + static_cast<std::ptrdiff_t>(ib),
                       b.nodes.begin() + static_cast<std::ptrdiff_t>(b_end));
    child.nodes.insert(child.nodes.end(),
                       a.nodes.begin() + static_cast<std::ptrdiff_t>(a_end),
                       a.nodes.end());
    if (child.depth() <= options_.max_depth) return child;
  }
  return a;
}

GpTree GpEngine::subtree_mutation(const GpTree& parent) {
  const std::size_t pos = static_cast<std::size_t>(rng_.below(parent.nodes.size()));
  const std::size_t node_depth = parent.node_depths()[pos];
  const std::size_t allowed = options_.max_depth - node_depth + 1;
  const std::size_t limit = std::min<std::size_t>(allowed, 4);
  GpTree replacement = random_tree(std::max<std::size_t>(limit, 1), false);
  GpTree child;
  const std::size_t end = parent.subtree_end(pos);
  child.nodes.insert(child.nodes.end(), parent.nodes.begin(),
                     parent.nodes.begin() + static_cast<std::ptrdiff_t>(pos));
  child.nodes.insert(child.nodes.end(), replacement.nodes.begin(),
                     replacement.nodes.end());
  child.nodes.insert(child.nodes.end(),
                     parent.nodes.begin() + static_cast<std::ptrdiff_t>(end),
                     parent.nodes.end());
  return child;
}

void GpEngine::tell(std::span<const double> scores) {
  if (!initialized_) throw std::logic_error("GpEngine: tell before ask");
  if (scores.size() != options_.pop_size) {
    throw std::invalid_argument("GpEngine: score list length mismatch");
  }
  const Ranking ranking = argsort_scores(scores, options_.direction);
  std::size_t pool_size = static_cast<std::size_t>(
      std::ceil(options_.truncation_fraction * static_cast<double>(options_.pop_size)));
  if (pool_size < 1) pool_size = 1;

  std::vector<GpTree> parents;
  parents.reserve(pool_size);
  for (std::size_t i = 0; i < pool_size; ++i) {
    parents.push_back(population_[ranking.order[i]]);
  }

  std::vector<GpTree> next;
  next.reserve(options_.pop_size);
  for (std::size_t i = 0; i < options_.pop_size; ++i) {
    if (rng_.uniform01() < options_.p_crossover) {
      const GpTree& a = parents[rng_.below(parents.size())];
      const GpTree& b = parents[rng_.below(parents.size())];
      next.push_back(crossover(a, b));
    } else {
      const GpTree& parent = parents[rng_.below(parents.size())];
      next.push_back(subtree_mutation(parent));
    }
  }
  population_ = std::move(next);
}

std::uint64_t GpEngine::state_digest() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const GpTree& tree : population_) {
    const std::uint64_t th = tree.hash();
    h = fnv1a(&th, sizeof(th), h);
  }
  const std::string rng_state = rng_.state_string();
  h = fnv1a(rng_state.data(), rng_state.size(), h);
  h = fnv1a(&initialized_, sizeof(initialized_), h);
  return h;
}

}  // namespace optecot

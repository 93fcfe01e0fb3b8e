#include "optecot/problems/symbolic_regression.hpp"

#include <cmath>
#include <stdexcept>

#include "optecot/csv.hpp"

namespace optecot::problems {

namespace {

ParameterMap make_map(std::size_t theta0, std::size_t n_points) {
  if (theta0 < 1 || theta0 >= n_points) {
    throw std::invalid_argument("SymbolicRegression: need 1 <= theta0 < n_points");
  }
  return ParameterMap(static_cast<double>(theta0), static_cast<double>(n_points),
                      /*integer_valued=*/true);
}

}  // namespace

SymbolicRegression::SymbolicRegression(SymbolicRegressionOptions options)
    : n_vars_(options.n_vars), map_(make_map(options.theta0, options.n_points)) {
  if (options.n_vars < 2) {
    throw std::invalid_argument(
        "SymbolicRegression: default generator needs at least 2 variables");
  }
  Rng rng(mix64(options.dataset_seed, 0xDA7A));
  dataset_.reserve(options.n_points);
  for (std::size_t i = 0; i < options.n_points; ++i) {
    SrDataPoint point;
    point.inputs.resize(options.n_vars);
    for (double& v : point.inputs) v = rng.uniform(-1.0, 1.0);
    point.target = ground_truth_value(point.inputs) +
                   rng.uniform(-options.noise_scale, options.noise_scale);
    dataset_.push_back(std::move(point));
  }
  rng.shuffle(dataset_);
}

SymbolicRegression::SymbolicRegression(std::vector<SrDataPoint> dataset,
                                       std::size_t theta0)
    : dataset_(std::move(dataset)),
      n_vars_(dataset_.empty() ? 0 : dataset_.front().inputs.size()),
      map_(make_map(theta0, dataset_.size())) {
  for (const auto& point : dataset_) {
    if (point.inputs.size() != n_vars_) {
      throw std::invalid_argument("SymbolicRegression: ragged dataset");
    }
  }
}

GpTree SymbolicRegression::sample(Rng& rng) const {
  GpTreeGen gen;
  gen.n_vars = n_vars_;
  const std::size_t depth = 2 + static_cast<std::size_t>(rng.below(5));
  const bool full = rng.below(2) == 0;
  return random_gp_tree(rng, gen, depth, full);
}

Evaluation SymbolicRegression::evaluate(const GpTree& tree, double theta,
                                        std::uint64_t /*seed*/) const {
  const auto subset = static_cast<std::size_t>(std::llround(theta));
  if (subset < static_cast<std::size_t>(map_.theta0()) || subset > dataset_.size()) {
    throw std::out_of_range("SymbolicRegression: subset size " +
                            std::to_string(subset) + " outside range");
  }
  double abs_error = 0.0;
  for (std::size_t i = 0; i < subset; ++i) {
    abs_error += std::fabs(tree.evaluate(dataset_[i].inputs) - dataset_[i].target);
  }
  const double mae = abs_error / static_cast<double>(subset);
  return {-mae, static_cast<TimeUnits>(subset)};
}

GpTree SymbolicRegression::ground_truth() {
  GpTree tree;
  auto op = [](GpOp o) { GpNode n; n.op = o; return n; };
  auto var = [](std::uint16_t i) { GpNode n; n.op = GpOp::var; n.var_index = i; return n; };
  auto cst = [](double v) { GpNode n; n.op = GpOp::constant; n.value = v; return n; };
  // x1*x1 - 0.7*x1*x2 + x2
  tree.nodes = {op(GpOp::add), op(GpOp::sub), op(GpOp::mul), var(0), var(0),
                op(GpOp::mul), cst(0.7),      op(GpOp::mul), var(0), var(1),
                var(1)};
  return tree;
}

double SymbolicRegression::ground_truth_value(std::span<const double> inputs) {
  return inputs[0] * inputs[0] - 0.7 * inputs[0] * inputs[1] + inputs[1];
}

std::string SymbolicRegression::dataset_to_csv() const {
  std::string header;
  for (std::size_t i = 0; i < n_vars_; ++i) {
    header += "x" + std::to_string(i + 1) + ",";
  }
  header += "y";
  CsvWriter csv(header);
  for (const auto& point : dataset_) {
    std::vector<std::string> cells;
    cells.reserve(n_vars_ + 1);
    for (double v : point.inputs) cells.push_back(format_double(v));
    cells.push_back(format_double(point.target));
    csv.row(cells);
  }
  return csv.text();
}

std::vector<SrDataPoint> SymbolicRegression::dataset_from_csv(
    const std::filesystem::path& path) {
  const CsvTable table = read_csv(path);
  if (table.header.size() < 2 || table.header.back() != "y") {
    throw std::invalid_argument("sr dataset csv: expected columns x1,...,xd,y");
  }
  std::vector<SrDataPoint> dataset;
  dataset.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    SrDataPoint point;
    point.inputs.reserve(row.size() - 1);
    for (std::size_t i = 0; i + 1 < row.size(); ++i) {
      point.inputs.push_back(std::stod(row[i]));
    }
    point.target = std::stod(row.back());
    dataset.push_back(std::move(point));
  }
  return dataset;
}

}  // namespace optecot::problems

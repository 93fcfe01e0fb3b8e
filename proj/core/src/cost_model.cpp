#include "optecot/cost_model.hpp"

#include <cmath>
#include <sstream>

namespace optecot {

ParameterMap::ParameterMap(double theta0, double theta1, bool integer_valued)
    : theta0_(theta0), theta1_(theta1), integer_valued_(integer_valued) {
  if (!(std::isfinite(theta0) && std::isfinite(theta1))) {
    throw std::invalid_argument("ParameterMap: parameters must be finite");
  }
  if (theta0 == theta1) {
    throw std::invalid_argument("ParameterMap: theta0 must differ from theta1");
  }
  if (integer_valued) {
    if (theta0 < 1.0 || theta1 < 1.0 || theta0 != std::floor(theta0) ||
        theta1 != std::floor(theta1)) {
      throw std::invalid_argument(
          "ParameterMap: integer-valued parameters need integer theta0, theta1 >= 1");
    }
  } else if (theta0 <= 0.0 || theta1 <= 0.0) {
    throw std::invalid_argument("ParameterMap: parameters must be positive");
  }
}

double ParameterMap::accuracy_for_cost(double c) const {
  require_cost_in_range(c, "accuracy_for_cost");
  const double a0 =
      theta1_ > theta0_ ? theta0_ / theta1_ : theta1_ / theta0_;
  return a0 + c * (1.0 - a0);
}

double ParameterMap::param_for_cost(double c) const {
  require_cost_in_range(c, "param_for_cost");
  if (c == 0.0) return theta0_;
  if (c == 1.0) return theta1_;
  const double a = accuracy_for_cost(c);
  double theta = theta1_ > theta0_ ? theta1_ * a : theta1_ / a;
  if (integer_valued_) {
    theta = std::round(theta);
    theta = std::clamp(theta, std::min(theta0_, theta1_),
                       std::max(theta0_, theta1_));
  }
  return theta;
}

CalibrationTable::CalibrationTable(std::vector<CalibrationRow> rows,
                                   std::string time_unit)
    : rows_(std::move(rows)), time_unit_(std::move(time_unit)) {
  if (rows_.size() < 2) {
    throw std::invalid_argument("CalibrationTable: need at least 2 rows");
  }
  if (rows_.front().cost != 0.0 || rows_.back().cost != 1.0) {
    throw std::invalid_argument("CalibrationTable: costs must span [0, 1]");
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (!(rows_[i].mean_time > 0.0)) {
      throw std::invalid_argument("CalibrationTable: mean times must be positive");
    }
    if (i == 0) continue;
    if (!(rows_[i].cost > rows_[i - 1].cost)) {
      throw std::invalid_argument("CalibrationTable: costs must strictly increase");
    }
    if (!(rows_[i].mean_time > rows_[i - 1].mean_time)) {
      throw std::invalid_argument(
          "CalibrationTable: mean times must strictly increase with cost");
    }
  }
}

double CalibrationTable::cost_for_time(TimeUnits t) const {
  if (!(t >= t0() && t <= t1())) {
    throw std::out_of_range("cost_for_time: time " + format_double(t) +
                            " outside [" + format_double(t0()) + ", " +
                            format_double(t1()) + "]");
  }
  for (std::size_t i = 1; i < rows_.size(); ++i) {
    const auto& lo = rows_[i - 1];
    const auto& hi = rows_[i];
    if (t <= hi.mean_time) {
      if (t == lo.mean_time) return lo.cost;
      if (t == hi.mean_time) return hi.cost;
      return lo.cost +
             (hi.cost - lo.cost) / (hi.mean_time - lo.mean_time) * (t - lo.mean_time);
    }
  }
  return rows_.back().cost;
}

TimeUnits CalibrationTable::time_for_cost(double c) const {
  require_cost_in_range(c, "time_for_cost");
  for (std::size_t i = 1; i < rows_.size(); ++i) {
    const auto& lo = rows_[i - 1];
    const auto& hi = rows_[i];
    if (c <= hi.cost) {
      if (c == lo.cost) return lo.mean_time;
      if (c == hi.cost) return hi.mean_time;
      return lo.mean_time +
             (hi.mean_time - lo.mean_time) / (hi.cost - lo.cost) * (c - lo.cost);
    }
  }
  return rows_.back().mean_time;
}

std::string CalibrationTable::to_csv() const {
  CsvWriter csv("cost,theta,mean_time,time_unit");
  for (const auto& row : rows_) {
    csv.row({format_double(row.cost), format_double(row.theta),
             format_double(row.mean_time), time_unit_});
  }
  return csv.text();
}

CalibrationTable CalibrationTable::from_csv_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<CalibrationRow> rows;
  std::string unit;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      if (line != "cost,theta,mean_time,time_unit") {
        throw std::invalid_argument("calibration csv: unexpected header: " + line);
      }
      first = false;
      continue;
    }
    std::istringstream ls(line);
    std::string cell;
    CalibrationRow row;
    std::getline(ls, cell, ',');
    row.cost = std::stod(cell);
    std::getline(ls, cell, ',');
    row.theta = std::stod(cell);
    std::getline(ls, cell, ',');
    row.mean_time = std::stod(cell);
    std::getline(ls, unit, ',');
    rows.push_back(row);
  }
  return CalibrationTable(std::move(rows), unit);
}

void CalibrationTable::save(const std::filesystem::path& path) const {
  write_text_file(path, to_csv());
}

CalibrationTable CalibrationTable::load(const std::filesystem::path& path) {
  return from_csv_text(read_text_file(path));
}

std::vector<double> normalize_grid(std::span<const double> grid, const char* where) {
  std::vector<double> costs(grid.begin(), grid.end());
  std::sort(costs.begin(), costs.end());
  costs.erase(std::unique(costs.begin(), costs.end()), costs.end());
  if (costs.size() < 2 || costs.front() != 0.0 || costs.back() != 1.0) {
    throw std::invalid_argument(std::string(where) +
                                ": grid must cover costs 0 and 1");
  }
  return costs;
}

std::vector<double> default_cost_grid(std::size_t n) {
  if (n < 2) throw std::invalid_argument("default_cost_grid: need n >= 2");
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  }
  grid.back() = 1.0;
  return grid;
}

}  // namespace optecot

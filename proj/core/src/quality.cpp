#include "optecot/quality.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "optecot/csv.hpp"

namespace optecot {

std::string QualityCurve::to_csv() const {
  CsvWriter csv("t,quality");
  for (std::size_t i = 0; i < times.size(); ++i) {
    csv.row({format_double(times[i]), format_double(values[i])});
  }
  return csv.text();
}

QualityCurve QualityCurve::from_csv_text(const std::string& text, std::string label) {
  QualityCurve curve;
  curve.label = std::move(label);
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      continue;
    }
    const auto comma = line.find(',');
    curve.times.push_back(std::stod(line.substr(0, comma)));
    curve.values.push_back(std::stod(line.substr(comma + 1)));
  }
  return curve;
}

double QualityCurve::value_at(TimeUnits t) const {
  if (times.empty()) throw std::logic_error("QualityCurve: empty curve");
  if (t < times.front()) {
    throw std::out_of_range("QualityCurve: time before first record");
  }
  // last index with times[i] <= t
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const auto idx = static_cast<std::size_t>(it - times.begin()) - 1;
  return values[idx];
}

QualityCurve cost_curve(const RunTrace& trace, std::string label) {
  QualityCurve curve;
  curve.label = std::move(label);
  for (const auto& record : trace.records) {
    curve.times.push_back(record.elapsed);
    curve.values.push_back(record.cost);
  }
  return curve;
}

ReachTime reach_time(const QualityCurve& curve, double q_ref, Direction direction) {
  if (curve.times.empty()) throw std::invalid_argument("reach_time: empty curve");
  const bool maximize = direction == Direction::maximize;
  ReachTime out;
  for (std::size_t i = 0; i < curve.times.size(); ++i) {
    const double q = curve.values[i];
    const bool at_or_below = maximize ? q <= q_ref : q >= q_ref;
    const bool attained = maximize ? q >= q_ref : q <= q_ref;
    if (at_or_below) {
      out.last_at_or_below = curve.times[i];
      out.below_exists = true;
    }
    if (attained && !out.reached) {
      out.first_reach = curve.times[i];
      out.reached = true;
    }
  }
  if (!out.below_exists) out.last_at_or_below = curve.times.front();
  if (!out.reached) out.first_reach = curve.times.back();
  return out;
}

std::vector<TimeUnits> common_time_grid(std::span<const QualityCurve> curves,
                                        std::size_t n_points) {
  if (curves.empty()) throw std::invalid_argument("common_time_grid: no curves");
  if (n_points < 2) throw std::invalid_argument("common_time_grid: need >= 2 points");
  TimeUnits start = curves.front().times.front();
  TimeUnits stop = curves.front().times.back();
  for (const auto& curve : curves) {
    if (curve.times.empty()) throw std::invalid_argument("common_time_grid: empty curve");
    start = std::max(start, curve.times.front());
    stop = std::max(stop, curve.times.back());
  }
  if (!(stop > start)) stop = start + 1.0;
  std::vector<TimeUnits> grid(n_points);
  const double step = (stop - start) / static_cast<double>(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i) {
    grid[i] = start + step * static_cast<double>(i);
  }
  grid.back() = stop;
  return grid;
}

QualityCurve mean_curve(std::span<const QualityCurve> curves,
                        std::span<const TimeUnits> grid, std::string label) {
  if (curves.empty()) throw std::invalid_argument("mean_curve: no curves");
  QualityCurve out;
  out.label = std::move(label);
  out.times.assign(grid.begin(), grid.end());
  out.values.resize(grid.size(), 0.0);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    double acc = 0.0;
    for (const auto& curve : curves) {
      acc += curve.value_at(grid[g]);
    }
    out.values[g] = acc / static_cast<double>(curves.size());
  }
  return out;
}

ComparisonSeries compare_curves(const QualityCurve& proposal,
                                const QualityCurve& original, Direction direction) {
  if (proposal.times != original.times) {
    throw std::invalid_argument("compare_curves: curves must share one grid");
  }
  const bool maximize = direction == Direction::maximize;
  ComparisonSeries series;
  series.times = proposal.times;
  series.quality_increase_pct.reserve(proposal.size());
  for (std::size_t i = 0; i < proposal.size(); ++i) {
    series.quality_increase_pct.push_back(proposal.values[i] / original.values[i] *
                                          100.0);
    const double target = original.values[i];
    bool found = false;
    for (std::size_t j = 0; j < proposal.size(); ++j) {
      const bool attained =
          maximize ? proposal.values[j] >= target : proposal.values[j] <= target;
      if (attained) {
        series.tr_times.push_back(proposal.times[i]);
        series.time_required_pct.push_back(proposal.times[j] / proposal.times[i] *
                                           100.0);
        found = true;
        break;
      }
    }
    (void)found;  // unreachable targets simply leave no TR point
  }
  return series;
}

double dominance_fraction(const QualityCurve& proposal, const QualityCurve& original,
                          Direction direction) {
  if (proposal.times != original.times) {
    throw std::invalid_argument("dominance_fraction: curves must share one grid");
  }
  const bool maximize = direction == Direction::maximize;
  std::size_t wins = 0;
  for (std::size_t i = 0; i < proposal.size(); ++i) {
    const bool at_least = maximize ? proposal.values[i] >= original.values[i]
                                   : proposal.values[i] <= original.values[i];
    if (at_least) ++wins;
  }
  return static_cast<double>(wins) / static_cast<double>(proposal.size());
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty input");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::string ComparisonSeries::qi_to_csv() const {
  CsvWriter csv("t,quality_increase_pct");
  for (std::size_t i = 0; i < times.size(); ++i) {
    csv.row({format_double(times[i]), format_double(quality_increase_pct[i])});
  }
  return csv.text();
}

std::string ComparisonSeries::tr_to_csv() const {
  CsvWriter csv("t,time_required_pct");
  for (std::size_t i = 0; i < tr_times.size(); ++i) {
    csv.row({format_double(tr_times[i]), format_double(time_required_pct[i])});
  }
  return csv.text();
}

}  // namespace optecot

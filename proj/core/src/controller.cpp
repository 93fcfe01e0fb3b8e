#include "optecot/controller.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "optecot/csv.hpp"

namespace optecot {

void OptecotConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("OptecotConfig: alpha must lie in (0, 1)");
  }
  if (beta < 1) throw std::invalid_argument("OptecotConfig: beta must be >= 1");
  if (kappa < 1) throw std::invalid_argument("OptecotConfig: kappa must be >= 1");
  if (!(t_max > 0.0)) throw std::invalid_argument("OptecotConfig: t_max must be positive");
  if (!(period > 0.0)) throw std::invalid_argument("OptecotConfig: period must be positive");
  if (sample_size < 2) {
    throw std::invalid_argument("OptecotConfig: sample_size must be >= 2");
  }
}

std::pair<double, double> confidence_interval(std::span<const double> variances) {
  if (variances.empty()) {
    throw std::invalid_argument("confidence_interval: empty input");
  }
  const double n = static_cast<double>(variances.size());
  double mean = 0.0;
  for (double v : variances) mean += v;
  mean /= n;
  double acc = 0.0;
  for (double v : variances) {
    const double d = v - mean;
    acc += d * d;
  }
  const double std_dev = std::sqrt(acc / n);
  return {mean - 2.0 * std_dev, mean + 2.0 * std_dev};
}

bool should_readjust(const ControllerState& state, const OptecotConfig& config,
                     double new_variance) {
  if (state.variances.size() <= config.beta) {
    throw std::logic_error(
        "should_readjust: called before beta + 1 variances were recorded");
  }
  if (state.frozen) return false;
  const std::size_t end = state.variances.size() - 1;  // newest entry excluded
  const std::span<const double> prior(state.variances.data() + (end - config.beta),
                                      config.beta);
  const auto [low, high] = confidence_interval(prior);
  const bool outside = new_variance < low || new_variance > high;
  if (!outside) return false;
  const double budget = std::floor(state.elapsed / config.period);
  return static_cast<double>(state.bisection_count) < budget;
}

std::string RunTrace::to_csv() const {
  CsvWriter csv("iteration,elapsed,cost,variance,best_score,readjusted");
  for (const auto& r : records) {
    csv.row({format_int(static_cast<long long>(r.iteration)),
             format_double(r.elapsed), format_double(r.cost),
             format_double(r.variance), format_double(r.best_score),
             r.readjusted ? "1" : "0"});
  }
  return csv.text();
}

std::string RunTrace::bisections_to_csv() const {
  std::string out = "call_index,midpoints,accuracies,result_cost,elapsed\n";
  for (const auto& entry : bisections) {
    out += entry.result.to_csv_row(entry.call_index);
    out.push_back('\n');
  }
  return out;
}

std::string RunTrace::sidecar_json(const std::string& config_text) const {
  nlohmann::ordered_json doc;
  doc["problem"] = problem;
  doc["seed"] = seed;
  doc["alpha"] = config.alpha;
  doc["beta"] = config.beta;
  doc["kappa"] = config.kappa;
  doc["t_max"] = config.t_max;
  doc["sample_size"] = config.sample_size;
  doc["period"] = config.period;
  if (!config_text.empty()) doc["config"] = config_text;
  nlohmann::ordered_json calls = nlohmann::ordered_json::array();
  for (const auto& entry : bisections) {
    nlohmann::ordered_json call;
    call["call_index"] = entry.call_index;
    call["iteration"] = entry.iteration;
    call["midpoints"] = entry.result.midpoints_visited;
    call["accuracies"] = entry.result.accuracies;
    call["result_cost"] = entry.result.cost;
    call["elapsed"] = entry.result.elapsed;
    calls.push_back(call);
  }
  doc["bisections"] = calls;
  return doc.dump(2) + "\n";
}

}  // namespace optecot

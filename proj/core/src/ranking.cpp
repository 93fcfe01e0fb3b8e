#include "optecot/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "optecot/csv.hpp"

namespace optecot {

std::vector<std::size_t> Ranking::positions() const {
  std::vector<std::size_t> pos(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    pos[order[k]] = k;
  }
  return pos;
}

Ranking argsort_scores(std::span<const double> scores, Direction direction) {
  if (scores.empty()) {
    throw std::invalid_argument("argsort_scores: empty score list");
  }
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (std::isnan(scores[i])) {
      throw std::invalid_argument("argsort_scores: NaN score at index " +
                                  std::to_string(i));
    }
  }
  Ranking r;
  r.order.resize(scores.size());
  std::iota(r.order.begin(), r.order.end(), std::size_t{0});
  if (direction == Direction::maximize) {
    std::stable_sort(r.order.begin(), r.order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  } else {
    std::stable_sort(r.order.begin(), r.order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  }
  return r;
}

std::vector<double> average_ranks(std::span<const double> scores,
                                  Direction direction) {
  const Ranking r = argsort_scores(scores, direction);
  const std::size_t n = scores.size();
  std::vector<double> ranks(n, 0.0);
  std::size_t k = 0;
  while (k < n) {
    std::size_t j = k + 1;
    while (j < n && scores[r.order[j]] == scores[r.order[k]]) ++j;
    const double avg = (static_cast<double>(k) + static_cast<double>(j - 1)) / 2.0;
    for (std::size_t m = k; m < j; ++m) {
      ranks[r.order[m]] = avg;
    }
    k = j;
  }
  return ranks;
}

namespace {

double pearson_of_ranks(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  double mean_a = 0.0, mean_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a /= static_cast<double>(n);
  mean_b /= static_cast<double>(n);
  double cov = 0.0, var_a = 0.0, var_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  if (var_a == 0.0 && var_b == 0.0) return 1.0;
  if (var_a == 0.0 || var_b == 0.0) return 0.0;
  // Identical and exactly reversed rank vectors must map to +-1 exactly;
  // the general expression can lose an ulp in var_a * var_b.
  if (cov == var_a && cov == var_b) return 1.0;
  if (-cov == var_a && var_a == var_b) return -1.0;
  return cov / std::sqrt(var_a * var_b);
}

}  // namespace

double spearman(const Ranking& a, const Ranking& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("spearman: length mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
  if (a.size() < 2) {
    throw std::invalid_argument("spearman: need at least 2 elements");
  }
  const std::vector<std::size_t> pa = a.positions();
  const std::vector<std::size_t> pb = b.positions();
  std::vector<double> ra(pa.size()), rb(pb.size());
  for (std::size_t i = 0; i < pa.size(); ++i) {
    ra[i] = static_cast<double>(pa[i]);
    rb[i] = static_cast<double>(pb[i]);
  }
  return pearson_of_ranks(ra, rb);
}

double spearman_scores(std::span<const double> scores_a,
                       std::span<const double> scores_b, Direction direction) {
  if (scores_a.size() != scores_b.size()) {
    throw std::invalid_argument("spearman_scores: length mismatch");
  }
  if (scores_a.size() < 2) {
    throw std::invalid_argument("spearman_scores: need at least 2 elements");
  }
  const std::vector<double> ra = average_ranks(scores_a, direction);
  const std::vector<double> rb = average_ranks(scores_b, direction);
  return pearson_of_ranks(ra, rb);
}

std::string RankingDistanceMatrix::to_csv() const {
  CsvWriter csv("solution_index,cost,normalized_distance");
  for (std::size_t ci = 0; ci < costs.size(); ++ci) {
    for (std::size_t i = 0; i < n_solutions; ++i) {
      csv.row({format_int(static_cast<long long>(i)), format_double(costs[ci]),
               format_double(values[ci][i])});
    }
  }
  return csv.text();
}

}  // namespace optecot

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "optecot/problems/mc_sphere.hpp"
#include "optecot/ranking.hpp"
#include "test_support.hpp"

using namespace optecot;
using optecot::testing::IncreasingPiecewiseLinear;

namespace {

// independent oracle: 1 - 6 * sum(d^2) / (n (n^2 - 1)), valid without ties
double spearman_d2(const std::vector<std::size_t>& ra,
                   const std::vector<std::size_t>& rb) {
  const double n = static_cast<double>(ra.size());
  double d2 = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    const double d = static_cast<double>(ra[i]) - static_cast<double>(rb[i]);
    d2 += d * d;
  }
  return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

Ranking permutation(std::vector<std::size_t> order) { return Ranking{std::move(order)}; }

}  // namespace

TEST_CASE("argsort orders best-first for both directions") {
  const std::vector<double> scores{3.0, 1.0, 2.0};
  CHECK(argsort_scores(scores, Direction::maximize).order ==
        std::vector<std::size_t>{0, 2, 1});
  CHECK(argsort_scores(scores, Direction::minimize).order ==
        std::vector<std::size_t>{1, 2, 0});
}

TEST_CASE("argsort breaks ties by ascending index") {
  const std::vector<double> scores{1.0, 1.0};
  CHECK(argsort_scores(scores, Direction::maximize).order ==
        std::vector<std::size_t>{0, 1});
  const std::vector<double> more{2.0, 1.0, 2.0, 1.0};
  CHECK(argsort_scores(more, Direction::maximize).order ==
        std::vector<std::size_t>{0, 2, 1, 3});
}

TEST_CASE("argsort rejects NaN naming the index") {
  const std::vector<double> scores{1.0, std::numeric_limits<double>::quiet_NaN(), 2.0};
  try {
    argsort_scores(scores, Direction::maximize);
    FAIL("expected throw");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("index 1") != std::string::npos);
  }
  CHECK_THROWS_AS(argsort_scores({}, Direction::maximize), std::invalid_argument);
}

TEST_CASE("argsort is invariant under strictly increasing transforms") {
  Rng rng(42);
  for (int rep = 0; rep < 30; ++rep) {
    std::vector<double> scores(10);
    for (double& s : scores) s = rng.uniform(-10.0, 10.0);
    if (rep % 3 == 0) scores[3] = scores[7];  // include ties
    const IncreasingPiecewiseLinear g(rng, -10.0, 10.0);
    const std::vector<double> transformed = g(scores);
    CHECK(argsort_scores(scores, Direction::maximize).order ==
          argsort_scores(transformed, Direction::maximize).order);
    CHECK(argsort_scores(scores, Direction::minimize).order ==
          argsort_scores(transformed, Direction::minimize).order);
  }
}

TEST_CASE("spearman identity, reversal and the n=4 hand value") {
  CHECK(spearman(permutation({0, 1, 2, 3, 4}), permutation({0, 1, 2, 3, 4})) == 1.0);
  CHECK(spearman(permutation({0, 1, 2, 3}), permutation({3, 2, 1, 0})) == -1.0);
  // rank vectors (0,1,2,3) vs (1,0,2,3): sum d^2 = 2 -> 0.8
  const double value = spearman(permutation({0, 1, 2, 3}), permutation({1, 0, 2, 3}));
  CHECK(value == 0.8);
  CHECK(value == spearman_d2({0, 1, 2, 3}, {1, 0, 2, 3}));
}

TEST_CASE("spearman properties over random permutations") {
  Rng rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 2 + rng.below(12);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(order);
    const Ranking a{order};
    std::vector<std::size_t> reversed(order.rbegin(), order.rend());
    const Ranking r{reversed};
    CHECK(spearman(a, a) == 1.0);
    CHECK(spearman(a, r) == -1.0);

    std::vector<std::size_t> other(n);
    for (std::size_t i = 0; i < n; ++i) other[i] = i;
    rng.shuffle(other);
    const Ranking b{other};
    CHECK(spearman(a, b) == spearman(b, a));
    CHECK(spearman(a, b) == doctest::Approx(spearman_d2(a.positions(), b.positions())));
  }
}

TEST_CASE("spearman rejects bad inputs") {
  CHECK_THROWS_AS(spearman(permutation({0, 1, 2}), permutation({0, 1})),
                  std::invalid_argument);
  CHECK_THROWS_AS(spearman(permutation({0}), permutation({0})), std::invalid_argument);
}

TEST_CASE("score spearman averages tied ranks") {
  // all-tied against distinct: no rank information
  CHECK(spearman_scores(std::vector<double>{1.0, 1.0, 1.0},
                        std::vector<double>{1.0, 2.0, 3.0},
                        Direction::maximize) == 0.0);
  // both all-tied: trivially preserved
  CHECK(spearman_scores(std::vector<double>{2.0, 2.0}, std::vector<double>{5.0, 5.0},
                        Direction::maximize) == 1.0);
  // identical scores with ties still correlate exactly
  const std::vector<double> tied{3.0, 1.0, 3.0, 0.0};
  CHECK(spearman_scores(tied, tied, Direction::maximize) == 1.0);
  // partial ties: average ranks (scipy cross-check value)
  const std::vector<double> a{1.0, 2.0, 2.0, 3.0};
  const std::vector<double> b{1.0, 2.0, 3.0, 4.0};
  CHECK(spearman_scores(a, b, Direction::maximize) ==
        doctest::Approx(0.9486832980505138));
}

TEST_CASE("accuracy at cost 1 is exactly 1 and aware of inversions") {
  problems::McSphere problem;
  Rng rng(3);
  std::vector<RealVector> sample;
  for (int i = 0; i < 8; ++i) sample.push_back(problem.sample(rng));

  const AccuracyReport at_full = accuracy<RealVector>(problem, sample, 1.0, 123);
  CHECK(at_full.value == 1.0);
  CHECK(at_full.scores_at_cost == at_full.scores_at_full);
  CHECK(at_full.elapsed_at_cost == at_full.elapsed_at_full);

  // two-element inversion through a scripted problem
  const optecot::testing::ScriptedProblem inverted(
      1.0, 1000.0, [](int id, double theta) {
        return theta == 1000.0 ? static_cast<double>(id) : -static_cast<double>(id);
      });
  const std::vector<int> pair{1, 2};
  CHECK(accuracy<int>(inverted, pair, 0.5, 1).value == -1.0);
}

TEST_CASE("accuracy on a well-separated sample is exact despite subsampling") {
  problems::McSphereOptions options;
  options.dimension = 2;
  options.noise_scale = 0.01;
  options.center = {0.0, 0.0};
  const problems::McSphere problem(options);
  // score gaps far exceed the noise bound, so any theta ranks them correctly
  std::vector<RealVector> sample;
  for (int i = 0; i < 6; ++i) {
    sample.push_back({0.3 * static_cast<double>(i + 1), 0.0});
  }
  for (double c : {0.0, 0.2, 0.6}) {
    CHECK(accuracy<RealVector>(problem, sample, c, 99).value == 1.0);
  }
}

TEST_CASE("accuracy reports elapsed totals for budget accounting") {
  const optecot::testing::ScriptedProblem problem(
      1.0, 1000.0, [](int id, double) { return static_cast<double>(id); });
  const std::vector<int> sample{1, 2, 3};
  const AccuracyReport report = accuracy<int>(problem, sample, 0.5, 1);
  const double theta_half = problem.parameter_map().param_for_cost(0.5);
  CHECK(report.elapsed_at_cost == doctest::Approx(3.0 * theta_half));
  CHECK(report.elapsed_at_full == doctest::Approx(3.0 * 1000.0));
}

TEST_CASE("accuracy requires a sample of at least two") {
  problems::McSphere problem;
  Rng rng(1);
  const std::vector<RealVector> sample{problem.sample(rng)};
  CHECK_THROWS_AS(accuracy<RealVector>(problem, sample, 0.5, 1),
                  std::invalid_argument);
}

TEST_CASE("ranking distance matrix matches brute force and zeroes at cost 1") {
  const optecot::testing::ScriptedProblem problem(
      1.0, 1000.0, [](int id, double theta) {
        // approximation perturbs scores deterministically per theta
        return static_cast<double>(id) +
               (theta == 1000.0 ? 0.0 : std::sin(static_cast<double>(id) * theta));
      });
  std::vector<int> solutions{3, 1, 4, 1 + 4, 9, 2, 6};
  const std::vector<double> grid{0.0, 0.5, 1.0};
  const RankingDistanceMatrix matrix =
      ranking_distance_matrix<int>(problem, solutions, grid, 17);

  REQUIRE(matrix.costs.size() == 3);
  REQUIRE(matrix.n_solutions == solutions.size());
  for (double d : matrix.values[2]) CHECK(d == 0.0);

  // brute-force recomputation of both argsorts
  const double n1 = static_cast<double>(solutions.size() - 1);
  for (std::size_t ci = 0; ci < grid.size(); ++ci) {
    const double theta = problem.parameter_map().param_for_cost(grid[ci]);
    std::vector<double> sc, sf;
    for (int id : solutions) {
      sc.push_back(problem.evaluate(id, theta, 17).score);
      sf.push_back(problem.evaluate(id, 1000.0, 17).score);
    }
    const auto pc = argsort_scores(sc, Direction::maximize).positions();
    const auto pf = argsort_scores(sf, Direction::maximize).positions();
    for (std::size_t i = 0; i < solutions.size(); ++i) {
      const double expected =
          std::fabs(static_cast<double>(pc[i]) - static_cast<double>(pf[i])) / n1;
      CHECK(matrix.values[ci][i] == expected);
    }
  }
}

TEST_CASE("two inverted solutions give maximal displacement") {
  const optecot::testing::ScriptedProblem problem(
      1.0, 1000.0, [](int id, double theta) {
        return theta == 1000.0 ? static_cast<double>(id) : -static_cast<double>(id);
      });
  const std::vector<int> solutions{5, 9};
  const std::vector<double> grid{0.5};
  const RankingDistanceMatrix matrix =
      ranking_distance_matrix<int>(problem, solutions, grid, 0);
  CHECK(matrix.values[0][0] == 1.0);
  CHECK(matrix.values[0][1] == 1.0);
}

TEST_CASE("distance matrix csv has the documented shape") {
  const optecot::testing::ScriptedProblem problem(
      1.0, 1000.0, [](int id, double) { return static_cast<double>(id); });
  const std::vector<int> solutions{1, 2, 3};
  const RankingDistanceMatrix matrix =
      ranking_distance_matrix<int>(problem, solutions, std::vector<double>{0.0, 1.0}, 0);
  const std::string csv = matrix.to_csv();
  CHECK(csv.rfind("solution_index,cost,normalized_distance\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 3);
}

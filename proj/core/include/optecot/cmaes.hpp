#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "optecot/rbea.hpp"
#include "optecot/rng.hpp"
#include "optecot/types.hpp"

namespace optecot {

using RealVector = std::vector<double>;

struct CmaEsOptions {
  std::size_t dimension = 0;
  std::size_t pop_size = 0;
  RealVector initial_mean;       // defaults to the origin
  double initial_sigma = 0.5;
  Direction direction = Direction::maximize;
  /// Optional feasible box; sampled candidates are clipped into it.
  std::optional<std::pair<RealVector, RealVector>> bounds;
  std::uint64_t seed = 0;
};

/// Covariance Matrix Adaptation Evolution Strategy with the standard
/// rank-mu weights, cumulation paths and step-size adaptation. Uses scores
/// only through their ranking.
class CmaEs final : public RbeaEngine<RealVector> {
 public:
  explicit CmaEs(CmaEsOptions options);

  std::vector<RealVector> ask() override;
  void tell(std::span<const double> scores) override;
  std::size_t population_size() const override { return options_.pop_size; }
  std::uint64_t state_digest() const override;

  const Eigen::VectorXd& mean() const { return mean_; }
  double sigma() const { return sigma_; }
  const Eigen::MatrixXd& covariance() const { return cov_; }
  std::size_t generation() const { return generation_; }

 private:
  void decompose();

  CmaEsOptions options_;
  std::size_t mu_;
  Eigen::VectorXd weights_;
  double mueff_;
  double cc_, cs_, c1_, cmu_, damps_;
  double chi_n_;

  Eigen::VectorXd mean_;
  double sigma_;
  Eigen::MatrixXd cov_;
  Eigen::MatrixXd eigen_basis_;   // B
  Eigen::VectorXd eigen_scale_;   // diag(D)
  Eigen::VectorXd path_sigma_;
  Eigen::VectorXd path_cov_;
  std::size_t generation_ = 0;

  Rng rng_;
  std::vector<RealVector> last_asked_;
};

}  // namespace optecot

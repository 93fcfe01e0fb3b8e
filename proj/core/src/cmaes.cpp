#include "optecot/cmaes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "optecot/ranking.hpp"

namespace optecot {

CmaEs::CmaEs(CmaEsOptions options)
    : options_(std::move(options)), rng_(mix64(options_.seed, 0xC3A5)) {
  const std::size_t n = options_.dimension;
  const std::size_t lambda = options_.pop_size;
  if (n < 1) throw std::invalid_argument("CmaEs: dimension must be >= 1");
  if (lambda < 2) throw std::invalid_argument("CmaEs: pop_size must be >= 2");
  if (!(options_.initial_sigma > 0.0)) {
    throw std::invalid_argument("CmaEs: initial_sigma must be positive");
  }
  if (options_.initial_mean.empty()) {
    options_.initial_mean.assign(n, 0.0);
  }
  if (options_.initial_mean.size() != n) {
    throw std::invalid_argument("CmaEs: initial_mean dimension mismatch");
  }
  if (options_.bounds) {
    const auto& [lo, hi] = *options_.bounds;
    if (lo.size() != n || hi.size() != n) {
      throw std::invalid_argument("CmaEs: bounds dimension mismatch");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!(lo[i] < hi[i])) throw std::invalid_argument("CmaEs: empty bounds box");
    }
  }

  mu_ = lambda / 2;
  Eigen::VectorXd raw(mu_);
  for (std::size_t i = 0; i < mu_; ++i) {
    raw[static_cast<Eigen::Index>(i)] =
        std::log((static_cast<double>(lambda) + 1.0) / 2.0) -
        std::log(static_cast<double>(i + 1));
  }
  weights_ = raw / raw.sum();
  mueff_ = 1.0 / weights_.squaredNorm();

  const double nd = static_cast<double>(n);
  cs_ = (mueff_ + 2.0) / (nd + mueff_ + 5.0);
  cc_ = (4.0 + mueff_ / nd) / (nd + 4.0 + 2.0 * mueff_ / nd);
  c1_ = 2.0 / ((nd + 1.3) * (nd + 1.3) + mueff_);
  cmu_ = std::min(1.0 - c1_, 2.0 * (mueff_ - 2.0 + 1.0 / mueff_) /
                                 ((nd + 2.0) * (nd + 2.0) + mueff_));
  damps_ = 1.0 + 2.0 * std::max(0.0, std::sqrt((mueff_ - 1.0) / (nd + 1.0)) - 1.0) + cs_;
  chi_n_ = std::sqrt(nd) * (1.0 - 1.0 / (4.0 * nd) + 1.0 / (21.0 * nd * nd));

  mean_ = Eigen::Map<const Eigen::VectorXd>(options_.initial_mean.data(),
                                            static_cast<Eigen::Index>(n));
  sigma_ = options_.initial_sigma;
  cov_ = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n),
                                   static_cast<Eigen::Index>(n));
  path_sigma_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  path_cov_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  decompose();
}

void CmaEs::decompose() {
  cov_ = 0.5 * (cov_ + cov_.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov_);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("CmaEs: covariance eigendecomposition failed");
  }
  Eigen::VectorXd values = solver.eigenvalues();
  const double floor_value =
      std::max(1e-300, values.maxCoeff() * 1e-14);
  bool repaired = false;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values[i] < floor_value) {
      values[i] = floor_value;
      repaired = true;
    }
  }
  eigen_basis_ = solver.eigenvectors();
  eigen_scale_ = values.cwiseSqrt();
  if (repaired) {
    cov_ = eigen_basis_ * values.asDiagonal() * eigen_basis_.transpose();
  }
}

std::vector<RealVector> CmaEs::ask() {
  const auto n = static_cast<Eigen::Index>(options_.dimension);
  std::vector<RealVector> population;
  population.reserve(options_.pop_size);
  for (std::size_t k = 0; k < options_.pop_size; ++k) {
    Eigen::VectorXd z(n);
    for (Eigen::Index i = 0; i < n; ++i) z[i] = rng_.normal();
    Eigen::VectorXd x = mean_ + sigma_ * (eigen_basis_ * (eigen_scale_.asDiagonal() * z));
    RealVector out(options_.dimension);
    for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = x[i];
    if (options_.bounds) {
      const auto& [lo, hi] = *options_.bounds;
      for (std::size_t i = 0; i < options_.dimension; ++i) {
        out[i] = std::clamp(out[i], lo[i], hi[i]);
      }
    }
    population.push_back(std::move(out));
  }
  last_asked_ = population;
  return population;
}

void CmaEs::tell(std::span<const double> scores) {
  if (last_asked_.empty()) throw std::logic_error("CmaEs: tell before ask");
  if (scores.size() != options_.pop_size) {
    throw std::invalid_argument("CmaEs: score list length mismatch");
  }
  const auto n = static_cast<Eigen::Index>(options_.dimension);
  const Ranking ranking = argsort_scores(scores, options_.direction);

  const Eigen::VectorXd old_mean = mean_;
  std::vector<Eigen::VectorXd> selected_y(mu_);
  Eigen::VectorXd y_w = Eigen::VectorXd::Zero(n);
  for (std::size_t i = 0; i < mu_; ++i) {
    const RealVector& x = last_asked_[ranking.order[i]];
    Eigen::VectorXd y =
        (Eigen::Map<const Eigen::VectorXd>(x.data(), n) - old_mean) / sigma_;
    y_w += weights_[static_cast<Eigen::Index>(i)] * y;
    selected_y[i] = std::move(y);
  }
  mean_ = old_mean + sigma_ * y_w;

  // C^{-1/2} y_w through the cached eigensystem
  Eigen::VectorXd inv_sqrt_y =
      eigen_basis_ *
      (eigen_scale_.cwiseInverse().asDiagonal() * (eigen_basis_.transpose() * y_w));

  path_sigma_ = (1.0 - cs_) * path_sigma_ +
                std::sqrt(cs_ * (2.0 - cs_) * mueff_) * inv_sqrt_y;
  const double ps_norm = path_sigma_.norm();
  const double expected = chi_n_;
  const double denom = std::sqrt(
      1.0 - std::pow(1.0 - cs_, 2.0 * static_cast<double>(generation_ + 1)));
  const bool hsig =
      ps_norm / denom / expected < 1.4 + 2.0 / (static_cast<double>(n) + 1.0);

  path_cov_ = (1.0 - cc_) * path_cov_ +
              (hsig ? std::sqrt(cc_ * (2.0 - cc_) * mueff_) : 0.0) * y_w;

  Eigen::MatrixXd rank_mu = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < mu_; ++i) {
    rank_mu += weights_[static_cast<Eigen::Index>(i)] * selected_y[i] *
               selected_y[i].transpose();
  }
  const double hsig_correction = hsig ? 0.0 : cc_ * (2.0 - cc_);
  cov_ = (1.0 - c1_ - cmu_) * cov_ +
         c1_ * (path_cov_ * path_cov_.transpose() + hsig_correction * cov_) +
         cmu_ * rank_mu;

  sigma_ *= std::exp((cs_ / damps_) * (ps_norm / expected - 1.0));
  generation_ += 1;
  decompose();
  last_asked_.clear();
}

std::uint64_t CmaEs::state_digest() const {
  std::uint64_t h = fnv1a(std::span<const double>(mean_.data(),
                                                  static_cast<std::size_t>(mean_.size())));
  h = fnv1a(std::span<const double>(cov_.data(), static_cast<std::size_t>(cov_.size())), h);
  h = fnv1a(std::span<const double>(path_sigma_.data(),
                                    static_cast<std::size_t>(path_sigma_.size())), h);
  h = fnv1a(std::span<const double>(path_cov_.data(),
                                    static_cast<std::size_t>(path_cov_.size())), h);
  h = fnv1a(&sigma_, sizeof(sigma_), h);
  h = fnv1a(&generation_, sizeof(generation_), h);
  const std::string rng_state = rng_.state_string();
  h = fnv1a(rng_state.data(), rng_state.size(), h);
  return h;
}

}  // namespace optecot

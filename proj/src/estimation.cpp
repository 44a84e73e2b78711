#include "cpe/estimation.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "cpe/errors.hpp"

namespace cpe {

namespace {

constexpr int kRecomputeEvery = 512;

double floored_sqrt_log(double log_arg) {
  return log_arg > 0.0 ? std::sqrt(log_arg) : 0.0;
}

}  // namespace

LeastSquaresState::LeastSquaresState(int d, double sigma) : d_(d), sigma_(sigma) {
  if (d < 1) throw ValidationError("estimator dimension must be positive");
  if (!(sigma >= 0.0)) throw ValidationError("sigma must be nonnegative");
  a_ = Eigen::MatrixXd::Zero(d, d);
  b_ = Eigen::VectorXd::Zero(d);
}

void LeastSquaresState::update(const SuperArm& arm, double reward) {
  const Eigen::VectorXd chi = arm.indicator(d_);
  if (have_inverse_) {
    if (++updates_since_recompute_ >= kRecomputeEvery) {
      a_ += chi * chi.transpose();
      recompute_inverse();
    } else {
      const Eigen::VectorXd u = a_inv_ * chi;  // A symmetric, so u also spans chi' A^-1
      a_inv_ -= (u * u.transpose()) / (1.0 + chi.dot(u));
      a_ += chi * chi.transpose();
    }
  } else {
    a_ += chi * chi.transpose();
  }
  b_ += reward * chi;
  ++t_;
  ++counts_[arm];
}

void LeastSquaresState::recompute_inverse() const {
  a_inv_ = a_.inverse();
  updates_since_recompute_ = 0;
}

void LeastSquaresState::ensure_inverse() const {
  if (have_inverse_) return;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a_);
  const double largest = eig.eigenvalues()(d_ - 1);
  if (eig.eigenvalues()(0) <= 1e-10 * std::max(1.0, largest)) {
    const Eigen::VectorXd null_dir = eig.eigenvectors().col(0);
    std::ostringstream msg;
    msg << "design matrix singular after " << t_ << " pulls; null direction (";
    for (int i = 0; i < d_; ++i) msg << (i ? "," : "") << null_dir(i);
    msg << ")";
    throw RankDeficiencyError(msg.str());
  }
  recompute_inverse();
  have_inverse_ = true;
}

const Eigen::MatrixXd& LeastSquaresState::inverse() const {
  ensure_inverse();
  return a_inv_;
}

Eigen::VectorXd LeastSquaresState::theta_hat() const {
  ensure_inverse();
  return a_inv_ * b_;
}

double LeastSquaresState::theta_hat_of(const SuperArm& arm) const {
  const Eigen::VectorXd est = theta_hat();
  double sum = 0.0;
  for (int e : arm.members) sum += est[e];
  return sum;
}

double LeastSquaresState::weighted_norm(const Eigen::VectorXd& x) const {
  ensure_inverse();
  return std::sqrt(std::max(0.0, x.dot(a_inv_ * x)));
}

double LeastSquaresState::weighted_norm(const SuperArm& arm) const {
  ensure_inverse();
  double q = 0.0;
  for (int i : arm.members)
    for (int j : arm.members) q += a_inv_(i, j);
  return std::sqrt(std::max(0.0, q));
}

double LeastSquaresState::diag_bound(const Eigen::VectorXd& x) const {
  ensure_inverse();
  double sum = 0.0;
  for (int i = 0; i < d_; ++i)
    sum += std::abs(x[i]) * std::sqrt(std::max(0.0, a_inv_(i, i)));
  return sum;
}

std::vector<double> LeastSquaresState::diag_radii() const {
  ensure_inverse();
  std::vector<double> s(d_);
  for (int i = 0; i < d_; ++i) s[i] = std::sqrt(std::max(0.0, a_inv_(i, i)));
  return s;
}

double LeastSquaresState::ellipsoid_radius(double num_arms, double delta) const {
  if (!(num_arms >= 1.0)) throw ValidationError("arm count must be at least 1");
  return ellipsoid_radius_logk(std::log(num_arms), delta);
}

double LeastSquaresState::ellipsoid_radius_logk(double log_num_arms, double delta) const {
  if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("delta must lie in (0,1)");
  if (t_ == 0) return 0.0;
  const double log_arg =
      std::log(kUnionConstant) + 2.0 * std::log(static_cast<double>(t_)) + log_num_arms -
      std::log(delta);
  return 2.0 * std::sqrt(2.0) * sigma_ * floored_sqrt_log(log_arg);
}

double LeastSquaresState::independent_radius(double delta) const {
  if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("delta must lie in (0,1)");
  if (t_ == 0) return 0.0;
  const double log_arg = std::log(kUnionConstant) + 2.0 * std::log(static_cast<double>(t_)) +
                         std::log(static_cast<double>(d_)) - std::log(delta);
  return sigma_ * std::sqrt(2.0) * floored_sqrt_log(log_arg);
}

long LeastSquaresState::pulls_of(const SuperArm& arm) const {
  const auto it = counts_.find(arm);
  return it == counts_.end() ? 0 : it->second;
}

double LeastSquaresState::inverse_residual() const {
  ensure_inverse();
  return (a_inv_ * a_ - Eigen::MatrixXd::Identity(d_, d_)).norm();
}

RegularizedLSState::RegularizedLSState(int d, int k, double omega, double s_bound,
                                       double r_scale)
    : d_(d), k_(k), omega_(omega), s_bound_(s_bound), r_scale_(r_scale) {
  if (d < 1 || k < 1 || k > d) throw ValidationError("regularized estimator needs 1 <= k <= d");
  if (!(omega > 0.0)) throw ValidationError("omega must be positive");
  if (!(s_bound >= 0.0)) throw ValidationError("s_bound must be nonnegative");
  if (!(r_scale >= 0.0)) throw ValidationError("r_scale must be nonnegative");
  a_ = omega * Eigen::MatrixXd::Identity(d, d);
  b_ = Eigen::VectorXd::Zero(d);
  a_inv_ = (1.0 / omega) * Eigen::MatrixXd::Identity(d, d);
  log_det_ = d * std::log(omega);
}

void RegularizedLSState::update(const SuperArm& arm, double reward) {
  const Eigen::VectorXd chi = arm.indicator(d_);
  if (++updates_since_recompute_ >= kRecomputeEvery) {
    a_ += chi * chi.transpose();
    recompute();
  } else {
    const Eigen::VectorXd u = a_inv_ * chi;
    log_det_ += std::log1p(chi.dot(u));
    a_inv_ -= (u * u.transpose()) / (1.0 + chi.dot(u));
    a_ += chi * chi.transpose();
  }
  b_ += reward * chi;
  ++t_;
}

void RegularizedLSState::recompute() {
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(a_);
  a_inv_ = ldlt.solve(Eigen::MatrixXd::Identity(d_, d_));
  log_det_ = ldlt.vectorD().array().log().sum();
  updates_since_recompute_ = 0;
}

Eigen::VectorXd RegularizedLSState::theta_hat() const { return a_inv_ * b_; }

double RegularizedLSState::weighted_norm(const Eigen::VectorXd& x) const {
  return std::sqrt(std::max(0.0, x.dot(a_inv_ * x)));
}

double RegularizedLSState::weighted_norm(const SuperArm& arm) const {
  double q = 0.0;
  for (int i : arm.members)
    for (int j : arm.members) q += a_inv_(i, j);
  return std::sqrt(std::max(0.0, q));
}

double RegularizedLSState::radius(double delta) const {
  if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("delta must lie in (0,1)");
  const double log_arg = 0.5 * log_det_ - 0.5 * d_ * std::log(omega_) - std::log(delta);
  return r_scale_ * std::sqrt(2.0 * k_) * floored_sqrt_log(log_arg) +
         std::sqrt(omega_) * s_bound_;
}

double RegularizedLSState::radius_fallback(double delta) const {
  if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("delta must lie in (0,1)");
  const double log_arg = std::log1p(static_cast<double>(t_) * k_ / omega_) - std::log(delta);
  return r_scale_ * std::sqrt(2.0 * k_ * d_) * floored_sqrt_log(log_arg) +
         std::sqrt(omega_) * s_bound_;
}

}  // namespace cpe

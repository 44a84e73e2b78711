#pragma once

#include <Eigen/Core>
#include <map>

#include "cpe/instance.hpp"

// Least-squares estimation from full-bandit observations, with the confidence
// radii used by the stopping rules. Observations are pairs (chi_M, r); the
// design A = sum chi chi' and response b = sum r chi give theta_hat = A^-1 b.
// The inverse is maintained by rank-one Sherman-Morrison updates and recomputed
// from A every 512 updates to bound drift.
//
// Radii (c' = 6/pi^2, natural logs, floored at 0 when the log argument <= 1):
//   ellipsoid:   C_t = 2 sqrt(2) sigma sqrt(log(c' t^2 K / delta)),
//                |x'theta - x'theta_hat| <= C_t ||x||_{A^-1}
//   independent: C_t = sigma sqrt(2 log(c' t^2 d / delta)),
//                |x'theta - x'theta_hat| <= C_t sum_i |x_i| sqrt(A^-1_ii)
// sigma is the sub-Gaussian scale of one whole observation (k times the
// per-arm scale). K counts the super arms and enters in log space.

namespace cpe {

inline constexpr double kUnionConstant = 0.60792710185402662866;  // 6/pi^2

class LeastSquaresState {
 public:
  LeastSquaresState(int d, double sigma);

  void update(const SuperArm& arm, double reward);

  int dim() const { return d_; }
  long rounds() const { return t_; }
  double sigma() const { return sigma_; }

  Eigen::VectorXd theta_hat() const;
  double theta_hat_of(const SuperArm& arm) const;

  // sqrt(x' A^-1 x); the overload evaluates it on a membership vector.
  double weighted_norm(const Eigen::VectorXd& x) const;
  double weighted_norm(const SuperArm& arm) const;

  // sum_i |x_i| sqrt(A^-1_ii) >= weighted_norm(x) for PD states.
  double diag_bound(const Eigen::VectorXd& x) const;
  // s_i = sqrt(A^-1_ii), the per-coordinate radii used by the independent bound.
  std::vector<double> diag_radii() const;

  double ellipsoid_radius(double num_arms, double delta) const;
  double ellipsoid_radius_logk(double log_num_arms, double delta) const;
  double independent_radius(double delta) const;

  const Eigen::MatrixXd& design() const { return a_; }
  const Eigen::MatrixXd& inverse() const;

  long pulls_of(const SuperArm& arm) const;
  const std::map<SuperArm, long>& pull_counts() const { return counts_; }

  // ||A^-1 A - I||_F, for drift checks.
  double inverse_residual() const;

 private:
  void ensure_inverse() const;
  void recompute_inverse() const;

  int d_;
  double sigma_;
  long t_ = 0;
  Eigen::MatrixXd a_;
  Eigen::VectorXd b_;
  std::map<SuperArm, long> counts_;
  mutable Eigen::MatrixXd a_inv_;
  mutable bool have_inverse_ = false;
  mutable int updates_since_recompute_ = 0;
};

// Regularized variant A^w = w I + sum chi chi', valid under adaptive sampling.
// Radius: C_t = r sqrt(2k log(det(A^w)^{1/2} / (w^{d/2} delta))) + sqrt(w) S,
// with the looser closed form C_t <= r sqrt(2kd log((1 + tk/w)/delta)) + sqrt(w) S.
// r is the per-arm sub-Gaussian scale and S bounds ||theta||_2.
class RegularizedLSState {
 public:
  RegularizedLSState(int d, int k, double omega, double s_bound, double r_scale);

  void update(const SuperArm& arm, double reward);

  int dim() const { return d_; }
  long rounds() const { return t_; }

  Eigen::VectorXd theta_hat() const;
  double weighted_norm(const Eigen::VectorXd& x) const;
  double weighted_norm(const SuperArm& arm) const;

  double radius(double delta) const;
  double radius_fallback(double delta) const;

  const Eigen::MatrixXd& design() const { return a_; }
  const Eigen::MatrixXd& inverse() const { return a_inv_; }

 private:
  void recompute();

  int d_, k_;
  double omega_, s_bound_, r_scale_;
  long t_ = 0;
  Eigen::MatrixXd a_;
  Eigen::VectorXd b_;
  Eigen::MatrixXd a_inv_;
  double log_det_ = 0.0;
  int updates_since_recompute_ = 0;
};

}  // namespace cpe

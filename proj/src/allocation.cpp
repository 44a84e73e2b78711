#include "cpe/allocation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cpe/errors.hpp"

namespace cpe {

namespace {

Eigen::MatrixXd gram(int d, const std::vector<SuperArm>& support,
                     const std::vector<double>* weights) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(d, d);
  for (size_t m = 0; m < support.size(); ++m) {
    const double w = weights ? (*weights)[m] : 1.0;
    for (int i : support[m].members)
      for (int j : support[m].members) g(i, j) += w;
  }
  return g;
}

}  // namespace

void check_span(int d, const std::vector<SuperArm>& support) {
  const Eigen::MatrixXd g = gram(d, support, nullptr);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
  if (eig.eigenvalues()(0) > 1e-10) return;
  const Eigen::VectorXd null_dir = eig.eigenvectors().col(0);
  std::ostringstream msg;
  msg << "support does not span R^" << d << "; null direction (";
  for (int i = 0; i < d; ++i) msg << (i ? "," : "") << null_dir(i);
  msg << ")";
  throw RankDeficiencyError(msg.str());
}

Allocation Allocation::make(int d, std::vector<SuperArm> support, std::vector<double> weights) {
  if (support.empty()) throw ValidationError("allocation support is empty");
  if (support.size() != weights.size())
    throw ValidationError("allocation has " + std::to_string(support.size()) + " arms but " +
                          std::to_string(weights.size()) + " weights");
  for (const SuperArm& arm : support)
    for (int e : arm.members)
      if (e < 0 || e >= d) throw ValidationError("support arm index outside [0, d)");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw ValidationError("allocation weights must be strictly positive");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw ValidationError("allocation weights sum to " + std::to_string(sum) + ", expected 1");
  check_span(d, support);
  return Allocation{d, std::move(support), std::move(weights)};
}

Eigen::MatrixXd design_matrix(const Allocation& alloc) {
  return gram(alloc.d, alloc.support, &alloc.weights);
}

std::vector<SuperArm> default_support(int d, int k, Rng& rng) {
  if (k < 1 || k >= d) throw ValidationError("default support needs 1 <= k < d");
  std::vector<SuperArm> support;
  support.reserve(d);
  for (int i = 0; i < d; ++i) {
    std::vector<int> members(k);
    for (int n = 1; n <= k; ++n) members[n - 1] = (i + n) % d;
    support.push_back(SuperArm::of(std::move(members), d));
  }
  if (std::gcd(d, k) == 1) {
    check_span(d, support);
    return support;
  }
  // Windows alone are rank deficient here; repair with random extra arms.
  std::vector<int> pool(d);
  for (int attempt = 0; attempt < 3 * d; ++attempt) {
    std::iota(pool.begin(), pool.end(), 0);
    for (int j = 0; j < k; ++j) {
      const int pickj = j + static_cast<int>(uniform_index(rng, d - j));
      std::swap(pool[j], pool[pickj]);
    }
    support.push_back(SuperArm::of(std::vector<int>(pool.begin(), pool.begin() + k), d));
    const Eigen::MatrixXd g = gram(d, support, nullptr);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
    if (eig.eigenvalues()(0) > 1e-10) return support;
  }
  check_span(d, support);  // throws with the null direction
  return support;
}

Allocation uniform_allocation(int d, std::vector<SuperArm> support) {
  const size_t n = support.size();
  return Allocation::make(d, std::move(support), std::vector<double>(n, 1.0 / n));
}

namespace {

// max_M chi' Lambda^-1 chi over the support, with the attaining index.
std::pair<double, int> max_support_norm(const Eigen::MatrixXd& lambda_inv,
                                        const std::vector<SuperArm>& support) {
  double best = -1.0;
  int best_idx = 0;
  for (size_t m = 0; m < support.size(); ++m) {
    double q = 0.0;
    for (int i : support[m].members)
      for (int j : support[m].members) q += lambda_inv(i, j);
    if (q > best) {
      best = q;
      best_idx = static_cast<int>(m);
    }
  }
  return {best, best_idx};
}

}  // namespace

Allocation compute_g_allocation(int d, std::vector<SuperArm> support, int iterations) {
  if (iterations < 0) throw ValidationError("iteration budget must be nonnegative");
  check_span(d, support);
  const int n = static_cast<int>(support.size());
  std::vector<double> lambda(n, 1.0 / n);
  std::vector<double> best_lambda = lambda;
  auto objective = [&](const std::vector<double>& w) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(d, d);
    for (int m = 0; m < n; ++m)
      for (int i : support[m].members)
        for (int j : support[m].members) g(i, j) += w[m];
    return max_support_norm(g.inverse(), support);
  };
  double best_obj = objective(lambda).first;
  for (int iter = 0; iter < iterations; ++iter) {
    const auto [obj, vertex] = objective(lambda);
    if (obj < best_obj) {
      best_obj = obj;
      best_lambda = lambda;
    }
    const double step = 1.0 / (iter + 2.0);
    for (int m = 0; m < n; ++m) lambda[m] *= 1.0 - step;
    lambda[vertex] += step;
  }
  if (objective(lambda).first < best_obj) best_lambda = lambda;
  // Frank-Wolfe keeps every coordinate of the uniform start strictly positive.
  double sum = std::accumulate(best_lambda.begin(), best_lambda.end(), 0.0);
  for (double& w : best_lambda) w /= sum;
  return Allocation::make(d, std::move(support), std::move(best_lambda));
}

double g_objective(const Allocation& alloc) {
  return max_support_norm(design_matrix(alloc).inverse(), alloc.support).first;
}

TrackingSampler::TrackingSampler(const Allocation& alloc, bool validate)
    : alloc_(alloc), counts_(alloc.size(), 0), validate_(validate) {}

int TrackingSampler::pick() const {
  int best = 0;
  double best_ratio = static_cast<double>(counts_[0]) / alloc_.weights[0];
  for (int m = 1; m < alloc_.size(); ++m) {
    const double ratio = static_cast<double>(counts_[m]) / alloc_.weights[m];
    if (ratio < best_ratio) {
      best_ratio = ratio;
      best = m;
    }
  }
  return best;
}

void TrackingSampler::record(int index) {
  ++counts_[index];
  ++t_;
  if (!validate_) return;
  const double n = static_cast<double>(alloc_.size());
  for (int m = 0; m < alloc_.size(); ++m) {
    const double target = alloc_.weights[m] * static_cast<double>(t_);
    if (counts_[m] > target + 1.0 + 1e-9 || counts_[m] < target - n - 1e-9)
      throw TrackingError("pull count " + std::to_string(counts_[m]) + " of support arm " +
                          std::to_string(m) + " leaves [lambda t - supp, lambda t + 1] at t = " +
                          std::to_string(t_));
  }
}

}  // namespace cpe

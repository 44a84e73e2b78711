#include "cpe/cem.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <vector>

#include "cpe/combinatorics.hpp"
#include "cpe/errors.hpp"

namespace cpe {

namespace {

void require_square_symmetric(const Eigen::MatrixXd& w) {
  if (w.rows() != w.cols() || w.rows() < 1)
    throw ValidationError("weight matrix must be square and nonempty");
  const double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
  if ((w - w.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw ValidationError("weight matrix must be symmetric");
}

double quadratic_form(const Eigen::MatrixXd& w, const std::vector<int>& s) {
  double q = 0.0;
  for (int i : s)
    for (int j : s) q += w(i, j);
  return q;
}

}  // namespace

TransformedGraph transform_weights(const Eigen::MatrixXd& w) {
  require_square_symmetric(w);
  const int n = static_cast<int>(w.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(w, Eigen::EigenvaluesOnly);
  const double ximin = eig.eigenvalues()(0);
  const double ximax = eig.eigenvalues()(n - 1);
  if (!(ximin > 0.0)) throw ValidationError("weight matrix must be positive definite");
  TransformedGraph graph;
  graph.n = n;
  graph.near_singular = ximin < 1e-12 * ximax;
  graph.wtilde = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) graph.wtilde(i, j) = w(i, j) + w(i, i) + w(j, j);
  return graph;
}

SuperArm greedy_peel(const TransformedGraph& graph, int k) {
  const int n = graph.n;
  if (k < 1 || k > n) throw ValidationError("peeling needs 1 <= k <= n");
  std::vector<bool> alive(n, true);
  std::vector<double> degree(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (j != i) degree[i] += graph.wtilde(i, j);
  for (int remaining = n; remaining > k; --remaining) {
    int victim = -1;
    double min_degree = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
      if (alive[i] && degree[i] < min_degree) {
        min_degree = degree[i];
        victim = i;
      }
    alive[victim] = false;
    for (int i = 0; i < n; ++i)
      if (alive[i] && i != victim) degree[i] -= graph.wtilde(i, victim);
  }
  std::vector<int> members;
  members.reserve(k);
  for (int i = 0; i < n; ++i)
    if (alive[i]) members.push_back(i);
  return SuperArm::of(std::move(members), n);
}

SuperArm brute_force_dks(const TransformedGraph& graph, int k) {
  if (k < 1 || k > graph.n) throw ValidationError("subset size outside [1, n]");
  if (binomial(graph.n, k) > 1e6)
    throw GuardError("subset enumeration refused: C(" + std::to_string(graph.n) + "," +
                     std::to_string(k) + ") exceeds 1e6");
  std::vector<int> best;
  double best_weight = -std::numeric_limits<double>::infinity();
  for_each_subset(graph.n, k, [&](const std::vector<int>& s) {
    double sum = 0.0;
    for (size_t a = 0; a < s.size(); ++a)
      for (size_t b = a + 1; b < s.size(); ++b) sum += graph.wtilde(s[a], s[b]);
    if (sum > best_weight) {
      best_weight = sum;
      best = s;
    }
  });
  return SuperArm::of(std::move(best), graph.n);
}

double subset_weight(const Eigen::MatrixXd& w, const SuperArm& s) {
  require_square_symmetric(w);
  double sum = 0.0;
  const auto& m = s.members;
  for (size_t a = 0; a < m.size(); ++a) {
    sum += w(m[a], m[a]);
    for (size_t b = a + 1; b < m.size(); ++b) sum += w(m[a], m[b]);
  }
  return sum;
}

double transformed_subset_weight(const TransformedGraph& graph, const SuperArm& s) {
  double sum = 0.0;
  const auto& m = s.members;
  for (size_t a = 0; a < m.size(); ++a)
    for (size_t b = a + 1; b < m.size(); ++b) sum += graph.wtilde(m[a], m[b]);
  return sum;
}

QMResult quadratic_maximize(const Eigen::MatrixXd& w, int k, double alpha_used,
                            const DksOracle& oracle) {
  require_square_symmetric(w);
  const int n = static_cast<int>(w.rows());
  if (k < 1 || k > n) throw ValidationError("subset size outside [1, n]");
  QMResult result;
  result.alpha_used = alpha_used;
  if (k == 1) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < w.rows(); ++i)
      if (w(i, i) > w(best, best)) best = i;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(w, Eigen::EigenvaluesOnly);
    if (!(eig.eigenvalues()(0) > 0.0))
      throw ValidationError("weight matrix must be positive definite");
    result.near_singular = eig.eigenvalues()(0) < 1e-12 * eig.eigenvalues()(n - 1);
    result.subset = SuperArm::of({static_cast<int>(best)}, n);
    result.value = w(best, best);
    return result;
  }
  const TransformedGraph graph = transform_weights(w);
  result.near_singular = graph.near_singular;
  result.subset = oracle ? oracle(graph, k) : greedy_peel(graph, k);
  result.value = quadratic_form(w, result.subset.members);
  return result;
}

QPOptimum brute_force_qp(const Eigen::MatrixXd& w, int k) {
  require_square_symmetric(w);
  const int n = static_cast<int>(w.rows());
  if (k < 1 || k > n) throw ValidationError("subset size outside [1, n]");
  if (binomial(n, k) > 1e6)
    throw GuardError("subset enumeration refused: C(" + std::to_string(n) + "," +
                     std::to_string(k) + ") exceeds 1e6");
  QPOptimum best;
  best.value = -std::numeric_limits<double>::infinity();
  for_each_subset(n, k, [&](const std::vector<int>& s) {
    const double q = quadratic_form(w, s);
    if (q > best.value) {
      best.value = q;
      best.subset = SuperArm{s};
    }
  });
  return best;
}

double theoretical_alpha(const Eigen::MatrixXd& w, int k) {
  require_square_symmetric(w);
  if (k < 2) throw ValidationError("ratio guarantee needs k >= 2");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(w, Eigen::EigenvaluesOnly);
  const double ximin = eig.eigenvalues()(0);
  const double ximax = eig.eigenvalues()(w.rows() - 1);
  if (!(ximin > 0.0)) throw ValidationError("weight matrix must be positive definite");
  return ximin / ximax / (k - 1.0);
}

}  // namespace cpe

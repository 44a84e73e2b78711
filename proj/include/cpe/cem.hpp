#pragma once

#include <Eigen/Core>
#include <functional>

#include "cpe/instance.hpp"

// Confidence-ellipsoid maximization: max chi_S' W chi_S over size-k subsets
// (W symmetric positive definite, in practice an inverse design matrix). The
// problem is reduced to densest k-subgraph on the transformed weights
//   wtilde_ij = w_ij + w_ii + w_jj   (i != j, zero diagonal),
// which are nonnegative for PD W, and solved approximately by greedy peeling.
// Set functions use the edge-sum convention
//   w(S)      = sum_{i<j in S} w_ij + sum_{i in S} w_ii,
//   wtilde(S) = sum_{i<j in S} wtilde_ij = sum_{i<j in S} w_ij + (|S|-1) sum_{i in S} w_ii,
// under which wtilde(S) >= w(S) for |S| >= 2 and
// wtilde(S) <= (|S|-1) (ximax/ximin) w(S), with ximin/ximax the extreme
// eigenvalues of W. Reported values stay on the quadratic-form scale chi' W chi.

namespace cpe {

struct TransformedGraph {
  int n = 0;
  Eigen::MatrixXd wtilde;   // symmetric, zero diagonal, nonnegative
  bool near_singular = false;  // ximin < 1e-12 ximax; the ratio guarantee is void
};

// Validates symmetry and positive definiteness (smallest eigenvalue > 0 within
// 1e-12 of the largest; at or below that the graph is flagged near singular).
TransformedGraph transform_weights(const Eigen::MatrixXd& w);

// Repeatedly removes the vertex of minimum weighted degree (lowest index among
// ties) until k remain. O(n^2).
SuperArm greedy_peel(const TransformedGraph& graph, int k);

// Exact densest-k-subgraph by enumeration; the "exact oracle" plug-in.
// Guarded by C(n,k) <= 1e6.
SuperArm brute_force_dks(const TransformedGraph& graph, int k);

double subset_weight(const Eigen::MatrixXd& w, const SuperArm& s);
double transformed_subset_weight(const TransformedGraph& graph, const SuperArm& s);

struct QMResult {
  SuperArm subset;
  double value = 0.0;       // chi_S' W chi_S
  double alpha_used = 0.0;  // approximation factor handed to stopping rules
  bool near_singular = false;
};

using DksOracle = std::function<SuperArm(const TransformedGraph&, int)>;

// Transform, run the oracle (greedy peeling by default), evaluate the original
// quadratic form on the returned subset. k = 1 needs no graph: the exact
// answer is the largest diagonal entry.
QMResult quadratic_maximize(const Eigen::MatrixXd& w, int k, double alpha_used,
                            const DksOracle& oracle = nullptr);

// Exact max of chi' W chi over size-k subsets, by enumeration. C(n,k) <= 1e6.
struct QPOptimum {
  SuperArm subset;
  double value = 0.0;
};
QPOptimum brute_force_qp(const Eigen::MatrixXd& w, int k);

// (1/(k-1)) ximin/ximax, the guaranteed ratio when the oracle is exact. k >= 2.
double theoretical_alpha(const Eigen::MatrixXd& w, int k);

}  // namespace cpe

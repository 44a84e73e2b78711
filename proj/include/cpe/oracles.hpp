#pragma once

#include <Eigen/Core>
#include <vector>

#include "cpe/instance.hpp"
#include "cpe/rng.hpp"

// Exact selection oracles over the top-k decision class. Tie-breaking is fixed
// everywhere by the ranking (value descending, index ascending), which makes
// every result deterministic and lexicographically smallest among ties.

namespace cpe {

struct ScoredSelection {
  SuperArm arm;
  double value = 0.0;
};

// The k best-scored indices.
ScoredSelection argmax_topk(const std::vector<double>& scores, int k);

// Best size-k set other than `exclude`, where `exclude` must be the argmax:
// swap the member ranked lowest for the non-member ranked highest. Exact for
// the top-k class. Needs k < d.
ScoredSelection second_best_topk(const std::vector<double>& scores, const SuperArm& exclude);

// max_{M != mhat} theta_hat(M) + c_t sum_i |chi_M(i) - chi_mhat(i)| s_i, the
// per-coordinate confidence maximization. Reduced to one linear top-k pass:
// a_i = theta_hat_i - c_t s_i inside mhat, theta_hat_i + c_t s_i outside, and
// the objective is c_t sum_{i in mhat} s_i + max_{M != mhat} a(M).
ScoredSelection solve_p1(const std::vector<double>& theta_hat, const std::vector<double>& s,
                         double c_t, const SuperArm& mhat);

// Uniformly random size-k super arm containing `include` and avoiding `exclude`.
SuperArm constrained_superarm(int d, int k, int include, int exclude, Rng& rng);

// max_{M != mhat} (theta_hat(M) + c_t ||chi_M - chi_mhat||_{A^-1}) - theta_hat(mhat),
// the exact ellipsoid stopping statistic, by enumeration. C(d,k) <= 1e6.
double brute_force_cem_gap(const Eigen::MatrixXd& a_inv, const std::vector<double>& theta_hat,
                           double c_t, const SuperArm& mhat);

}  // namespace cpe

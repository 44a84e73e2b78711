#include "cpe/gaps.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "cpe/cem.hpp"
#include "cpe/combinatorics.hpp"
#include "cpe/errors.hpp"
#include "cpe/oracles.hpp"

namespace cpe {

namespace {

// theta(M*) minus the best value among super arms forced to contain (e outside
// M*) or avoid (e inside M*) the arm e.
std::vector<double> per_arm_gaps(const BanditInstance& inst, const SuperArm& best,
                                 double best_value) {
  std::vector<double> gaps(inst.d);
  for (int e = 0; e < inst.d; ++e) {
    std::vector<double> rest;
    rest.reserve(inst.d - 1);
    for (int i = 0; i < inst.d; ++i)
      if (i != e) rest.push_back(inst.theta[i]);
    std::sort(rest.begin(), rest.end(), std::greater<>());
    double rival;
    if (best.contains(e)) {
      rival = 0.0;  // best super arm avoiding e: top k of the rest
      for (int i = 0; i < inst.k; ++i) rival += rest[i];
    } else {
      rival = inst.theta[e];  // best super arm containing e
      for (int i = 0; i < inst.k - 1; ++i) rival += rest[i];
    }
    gaps[e] = best_value - rival;
  }
  return gaps;
}

}  // namespace

GapMetrics compute_gap_metrics(const BanditInstance& instance, const Allocation& alloc,
                               double eps) {
  if (!(eps >= 0.0)) throw ValidationError("eps must be nonnegative");
  if (alloc.d != instance.d) throw ValidationError("allocation dimension differs from instance");
  const ScoredSelection best = argmax_topk(instance.theta, instance.k);
  const ScoredSelection second = second_best_topk(instance.theta, best.arm);
  GapMetrics metrics;
  metrics.delta_min = best.value - second.value;
  if (metrics.delta_min <= 1e-9)
    throw AmbiguousInstanceError("best super arm is not unique: gap " +
                                 std::to_string(metrics.delta_min));
  metrics.delta_e = per_arm_gaps(instance, best.arm, best.value);

  const Eigen::MatrixXd lambda_inv = design_matrix(alloc).inverse();
  if (binomial(instance.d, instance.k) <= 1e5) {
    metrics.rho = brute_force_qp(lambda_inv, instance.k).value;
  } else {
    metrics.rho = quadratic_maximize(lambda_inv, instance.k, 1.0).value;
    metrics.rho_is_lower_bound = true;
  }
  const double denom = (metrics.delta_min + eps) * (metrics.delta_min + eps);
  metrics.h_eps = metrics.rho / denom;

  if (instance.d <= 16) {
    // The pairwise maximum is a closed form: weights sqrt(Lambda^-1_ii) are
    // nonnegative and any 2 min(k, d-k) indices form a symmetric difference.
    std::vector<double> s(instance.d);
    for (int i = 0; i < instance.d; ++i) s[i] = std::sqrt(std::max(0.0, lambda_inv(i, i)));
    std::sort(s.begin(), s.end(), std::greater<>());
    const int swaps = std::min(instance.k, instance.d - instance.k);
    double sum = 0.0;
    for (int i = 0; i < 2 * swaps; ++i) sum += s[i];
    metrics.rho_prime = sum * sum;
    metrics.h_eps_prime = *metrics.rho_prime / denom;
  }
  return metrics;
}

}  // namespace cpe

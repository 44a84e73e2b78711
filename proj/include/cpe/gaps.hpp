#pragma once

#include <optional>
#include <vector>

#include "cpe/allocation.hpp"
#include "cpe/instance.hpp"

// Instance hardness quantities for a sampling distribution lambda:
//   delta_e  = theta(M*) - max_{M owning/missing e as appropriate} theta(M)
//   rho      = max_M ||chi_M||^2_{Lambda^-1}    (brute force when C(d,k) <= 1e5,
//              otherwise the greedy quadratic-maximization value, flagged as a
//              lower bound)
//   rho'     = (max_{M,M'} sum_i |chi_M(i)-chi_M'(i)| sqrt(Lambda^-1_ii))^2,
//              reported only for d <= 16
//   H_eps    = rho  / (delta_min + eps)^2
//   H'_eps   = rho' / (delta_min + eps)^2

namespace cpe {

struct GapMetrics {
  double delta_min = 0.0;
  std::vector<double> delta_e;
  double rho = 0.0;
  bool rho_is_lower_bound = false;
  std::optional<double> rho_prime;
  double h_eps = 0.0;
  std::optional<double> h_eps_prime;
};

// Throws AmbiguousInstanceError when the best super arm is not unique
// (best-vs-second-best gap within 1e-9).
GapMetrics compute_gap_metrics(const BanditInstance& instance, const Allocation& alloc,
                               double eps);

}  // namespace cpe

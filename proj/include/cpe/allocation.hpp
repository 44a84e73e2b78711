#pragma once

#include <Eigen/Core>
#include <vector>

#include "cpe/instance.hpp"
#include "cpe/rng.hpp"

// Static sampling distributions over super arms, the cyclic default support,
// the Frank-Wolfe G-allocation, and the deterministic tracking sampler that
// realizes a distribution as an integer pull sequence.

namespace cpe {

struct Allocation {
  int d = 0;
  std::vector<SuperArm> support;
  std::vector<double> weights;  // strictly positive, sum to 1 within 1e-12

  // Validates shape, positivity, normalization, and that the support spans R^d.
  static Allocation make(int d, std::vector<SuperArm> support, std::vector<double> weights);

  int size() const { return static_cast<int>(support.size()); }
};

// Lambda_lambda = sum_M lambda_M chi_M chi_M'.
Eigen::MatrixXd design_matrix(const Allocation& alloc);

// Throws RankDeficiencyError (naming the null direction) unless sum_M chi chi'
// over the given arms has smallest eigenvalue > 1e-10.
void check_span(int d, const std::vector<SuperArm>& support);

// d cyclic windows: arm i covers ((i+1)..(i+k)) mod d. When d and k share a
// factor the windows do not span, so uniformly random size-k arms are appended
// (at most 3d attempts) until the span check passes.
std::vector<SuperArm> default_support(int d, int k, Rng& rng);

Allocation uniform_allocation(int d, std::vector<SuperArm> support);

// Frank-Wolfe minimization of max_{M in support} ||chi_M||^2_{Lambda^-1}:
// start uniform, each step moves mass 1/(iter+2) onto a vertex at the current
// max (lowest index among ties). The schedule overshoots transiently, so the
// best iterate seen is returned; more iterations never yield a worse result.
Allocation compute_g_allocation(int d, std::vector<SuperArm> support, int iterations);

// max_{M in support} ||chi_M||^2_{Lambda(alloc)^-1}.
double g_objective(const Allocation& alloc);

// Realizes an allocation as a pull sequence: argmin_M T_M(t)/lambda_M with
// lowest-index ties. Counts then obey lambda_M t - |supp| <= T_M(t) <= lambda_M t + 1;
// with validate on, every record() checks the envelope and throws TrackingError.
class TrackingSampler {
 public:
  explicit TrackingSampler(const Allocation& alloc, bool validate = false);

  int pick() const;            // support index the rule selects next
  void record(int index);      // count the pull of support[index]
  int pull_next() { const int i = pick(); record(i); return i; }

  long t() const { return t_; }
  long count(int index) const { return counts_[index]; }

 private:
  const Allocation& alloc_;
  std::vector<long> counts_;
  long t_ = 0;
  bool validate_;
};

}  // namespace cpe

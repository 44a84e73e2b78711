#pragma once

#include <cstdint>
#include <vector>

#include "cpe/allocation.hpp"
#include "cpe/environments.hpp"

// Fixed-confidence top-k identification under full-bandit feedback. All
// runners return an epsilon-optimal super arm with probability at least
// 1 - delta when their stopping condition fires; every run is deterministic
// given (seed, config, environment).
//
//   run_icb      static sampling, per-coordinate confidence maximization
//   run_saqm     static sampling, ellipsoid stopping via quadratic maximization
//   run_sa_ex    static sampling, exact (enumerated) ellipsoid stopping
//   run_clucb_qm adaptive paired sampling, regularized ellipsoid stopping
//   run_clucb_ex adaptive paired sampling, exact (enumerated) stopping
//   run_clucb    adaptive paired sampling, per-arm radius stopping
//   run_me       halving elimination on single-arm gaps (padded pulls)
//   run_lucb     confidence-interval racing on single-arm gaps (padded pulls)

namespace cpe {

struct AlgoConfig {
  double epsilon = 0.5;
  double delta = 0.05;
  double alpha = 0.9;    // stopping-rule approximation factor in (0, 1]
  double omega = 1.0;    // ridge weight of the regularized estimator
  double s_bound = 0.0;  // bound on ||theta||_2; 0 selects sqrt(d)
  long max_rounds = 10'000'000;
  std::uint64_t seed = 0;
  bool record_trace = false;
  bool exact_ratio = false;  // also evaluate the exact QP each round (trace ratio)
  bool validate_tracking = false;
};

enum class StopReason { ConditionMet, RoundCap };

struct TraceRow {
  long round = 0;
  double c_t = 0.0;
  double z = 0.0;           // the monitored stopping statistic
  double best_value = 0.0;  // estimate of the current empirical best super arm
  double ratio = 0.0;       // approx/exact value ratio; NaN unless exact_ratio
  double seconds = 0.0;
};

struct RunOutcome {
  SuperArm output;
  long samples = 0;
  double wall_time = 0.0;
  StopReason stopped_by = StopReason::ConditionMet;
  std::vector<TraceRow> trace;
};

RunOutcome run_icb(const Environment& env, const Allocation& alloc, const AlgoConfig& cfg);
RunOutcome run_saqm(const Environment& env, const Allocation& alloc, const AlgoConfig& cfg);
RunOutcome run_sa_ex(const Environment& env, const Allocation& alloc, const AlgoConfig& cfg);

RunOutcome run_clucb_qm(const Environment& env, const AlgoConfig& cfg);
RunOutcome run_clucb_ex(const Environment& env, const AlgoConfig& cfg);
RunOutcome run_clucb(const Environment& env, const AlgoConfig& cfg);

RunOutcome run_me(const Environment& env, const AlgoConfig& cfg);
RunOutcome run_lucb(const Environment& env, const AlgoConfig& cfg);

// Pulls per surviving arm in a halving phase at accuracy eps_l, confidence
// delta_l: ceil((2 sqrt(k) / eps_l^2) ln(3k / delta_l)).
long me_phase_pull_count(int k, double eps_l, double delta_l);

}  // namespace cpe

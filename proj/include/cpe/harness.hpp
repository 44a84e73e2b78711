#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cpe/algorithms.hpp"

// Experiment driver behind the CLI. Every command is deterministic given the
// master seed (wall-time columns excepted): per-repetition seeds, synthetic
// instances, and allocations are all derived from it, repetitions are
// scheduled over a worker pool, and rows are collected in job order before
// writing. Output is comma-separated text with a header row.

namespace cpe {

enum class AlgoId { Icb, Saqm, SaEx, ClucbQm, Clucb, ClucbEx, Me, Lucb };

const char* algo_name(AlgoId id);
AlgoId parse_algo(const std::string& name);
std::vector<AlgoId> parse_algo_list(const std::string& csv);

// Enumeration-based stopping rules; refused unless explicitly enabled and
// C(d,k) <= 1e6.
bool algo_is_exponential(AlgoId id);
// Needs a static allocation (the others sample adaptively).
bool algo_is_static(AlgoId id);

enum class AllocKind { Uniform, G };

struct ExperimentConfig {
  std::vector<AlgoId> algos{AlgoId::Saqm};
  int d = 10;
  int k = 5;
  double delta_min = 1.0;
  double noise_std = 1.0;
  AlgoConfig algo;  // epsilon, delta, alpha, omega, s_bound, max_rounds, exact_ratio
  AllocKind alloc_kind = AllocKind::Uniform;
  int g_iterations = 200;
  int reps = 10;
  std::uint64_t master_seed = 1;
  std::string labels_path;  // non-empty selects the worker-accuracy environment
  std::string out_path;     // used only to name per-repetition trace sidecar files
  int workers = 0;          // <= 0 selects the hardware concurrency
  bool enable_exponential = false;
};

// One row per repetition:
//   algorithm,seed,d,k,instance,epsilon,delta,samples,correct,wall_time
// `instance` is delta_min for synthetic runs and the dataset path otherwise;
// `correct` is 1 when the output is epsilon-optimal under the true means.
int cmd_run(const ExperimentConfig& config, std::ostream& out);

// Long format over a delta_min grid (synthetic only):
//   algorithm,delta_min,rep,samples,time
int cmd_sweep(const ExperimentConfig& config, const std::vector<double>& delta_grid,
              std::ostream& out);

// Mean wall time per decision round at each d (k = d/2), warm-up run
// discarded, measured sequentially:
//   algorithm,d,k,samples,sec_per_round
int cmd_bench_runtime(const ExperimentConfig& config, const std::vector<int>& d_list,
                      std::ostream& out);

// Replays runs with the stopping rule disarmed, recording the per-round ratio
// of the approximate to the exact stopping statistic:
//   delta_min,rep,round,ratio,additive_error
int cmd_approx_eval(const ExperimentConfig& config, const std::vector<double>& delta_grid,
                    long rounds, std::ostream& out);

// Writes a synthetic instance file (to config.out_path, or `out` when unset);
// optionally a companion label file of `tasks` rows per worker with
// accuracies (theta+1)/2.
int cmd_gen_instance(const ExperimentConfig& config, const std::string& labels_out,
                     int tasks, std::ostream& out);

}  // namespace cpe

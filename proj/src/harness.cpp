#include "cpe/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "cpe/combinatorics.hpp"
#include "cpe/environments.hpp"
#include "cpe/errors.hpp"
#include "cpe/gaps.hpp"
#include "cpe/oracles.hpp"

namespace cpe {
namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fmt_time(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream file(path);
  if (!file) throw FileError("cannot open for writing: " + path);
  file << text;
  file.flush();
  if (!file) throw FileError("write failed: " + path);
}

// Seed derivation: one instance seed per grid point, one run seed per
// repetition under it, and a fixed support seed so the sampling allocation is
// identical across grid points.
std::uint64_t instance_seed(std::uint64_t master, int grid_index) {
  return mix_seed(master, 1000 + static_cast<std::uint64_t>(grid_index));
}
std::uint64_t run_seed(std::uint64_t inst_seed, int rep) {
  return mix_seed(inst_seed, static_cast<std::uint64_t>(rep));
}
std::uint64_t support_seed(std::uint64_t master) { return mix_seed(master, 77); }

std::unique_ptr<Environment> make_environment(const ExperimentConfig& config,
                                              double delta_min, std::uint64_t seed) {
  if (!config.labels_path.empty())
    return std::make_unique<CrowdEnvironment>(
        load_crowd_labels_file(config.labels_path, config.k));
  SyntheticSpec spec;
  spec.d = config.d;
  spec.k = config.k;
  spec.delta_min = delta_min;
  spec.noise_std = config.noise_std;
  spec.seed = seed;
  return std::make_unique<InstanceEnvironment>(generate_synthetic(spec));
}

// Allocations range over the whole decision class when it is small enough to
// enumerate (the G-allocation is then unrestricted); larger classes fall back
// to the spanning cyclic default support.
std::vector<SuperArm> allocation_support(int d, int k, Rng& rng) {
  if (binomial(d, k) > 500.0) return default_support(d, k, rng);
  std::vector<SuperArm> full;
  full.reserve(static_cast<std::size_t>(binomial(d, k)));
  for_each_subset(d, k, [&](const std::vector<int>& idx) {
    full.push_back(SuperArm::of(idx, d));
  });
  return full;
}

Allocation make_allocation(const ExperimentConfig& config, const BanditInstance& inst) {
  Rng rng(support_seed(config.master_seed));
  std::vector<SuperArm> support = allocation_support(inst.d, inst.k, rng);
  if (config.alloc_kind == AllocKind::G)
    return compute_g_allocation(inst.d, std::move(support), config.g_iterations);
  return uniform_allocation(inst.d, std::move(support));
}

RunOutcome dispatch(AlgoId id, const Environment& env, const Allocation* alloc,
                    const AlgoConfig& cfg) {
  switch (id) {
    case AlgoId::Icb:
      return run_icb(env, *alloc, cfg);
    case AlgoId::Saqm:
      return run_saqm(env, *alloc, cfg);
    case AlgoId::SaEx:
      return run_sa_ex(env, *alloc, cfg);
    case AlgoId::ClucbQm:
      return run_clucb_qm(env, cfg);
    case AlgoId::Clucb:
      return run_clucb(env, cfg);
    case AlgoId::ClucbEx:
      return run_clucb_ex(env, cfg);
    case AlgoId::Me:
      return run_me(env, cfg);
    case AlgoId::Lucb:
      return run_lucb(env, cfg);
  }
  throw ValidationError("unknown algorithm id");
}

bool eps_optimal(const BanditInstance& inst, const SuperArm& output, double eps) {
  const ScoredSelection best = argmax_topk(inst.theta, inst.k);
  return expected_reward(inst, output) >= best.value - eps - 1e-12;
}

void validate_common(const ExperimentConfig& config) {
  if (config.algos.empty()) throw ValidationError("at least one algorithm is required");
  if (config.reps < 1) throw ValidationError("repetitions must be >= 1");
  for (AlgoId id : config.algos)
    if (algo_is_exponential(id) && !config.enable_exponential)
      throw ValidationError(std::string(algo_name(id)) +
                            " enumerates the decision class; pass --enable-exponential");
}

void check_enumeration_guard(int d, int k) {
  if (binomial(d, k) > 1e6)
    throw GuardError("brute-force evaluation refuses C(d,k) > 1e6");
}

// Jobs run across a pool of threads; each job owns its run end-to-end and
// writes only its own slot, so results are collected in job order.
template <typename Job>
void run_jobs(int workers, size_t count, const Job& job) {
  size_t n = workers > 0 ? static_cast<size_t>(workers)
                         : std::max(1u, std::thread::hardware_concurrency());
  n = std::max<size_t>(1, std::min(n, count));
  if (n == 1) {
    for (size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (size_t w = 0; w < n; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          job(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::string trace_csv(const std::vector<TraceRow>& trace) {
  std::ostringstream text;
  text << "round,c_t,z,best_value,ratio,seconds\n";
  for (const TraceRow& row : trace)
    text << row.round << ',' << fmt(row.c_t) << ',' << fmt(row.z) << ','
         << fmt(row.best_value) << ',' << fmt(row.ratio) << ','
         << fmt_time(row.seconds) << '\n';
  return text.str();
}

double per_round_seconds(const RunOutcome& res) {
  if (res.trace.size() >= 2)
    return (res.trace.back().seconds - res.trace.front().seconds) /
           static_cast<double>(res.trace.size() - 1);
  return res.samples > 0 ? res.wall_time / static_cast<double>(res.samples) : 0.0;
}

}  // namespace

const char* algo_name(AlgoId id) {
  switch (id) {
    case AlgoId::Icb: return "icb";
    case AlgoId::Saqm: return "saqm";
    case AlgoId::SaEx: return "sa-ex";
    case AlgoId::ClucbQm: return "clucb-qm";
    case AlgoId::Clucb: return "clucb";
    case AlgoId::ClucbEx: return "clucb-ex";
    case AlgoId::Me: return "me";
    case AlgoId::Lucb: return "lucb";
  }
  return "?";
}

AlgoId parse_algo(const std::string& name) {
  static const std::pair<const char*, AlgoId> table[] = {
      {"icb", AlgoId::Icb},         {"saqm", AlgoId::Saqm},
      {"sa-ex", AlgoId::SaEx},      {"clucb-qm", AlgoId::ClucbQm},
      {"clucb", AlgoId::Clucb},     {"clucb-ex", AlgoId::ClucbEx},
      {"me", AlgoId::Me},           {"lucb", AlgoId::Lucb},
  };
  for (const auto& [text, id] : table)
    if (name == text) return id;
  throw ValidationError("unknown algorithm '" + name +
                        "'; expected one of icb, saqm, sa-ex, clucb-qm, clucb, "
                        "clucb-ex, me, lucb");
}

std::vector<AlgoId> parse_algo_list(const std::string& csv) {
  std::vector<AlgoId> out;
  std::string token;
  std::istringstream in(csv);
  while (std::getline(in, token, ',')) {
    if (!token.empty()) out.push_back(parse_algo(token));
  }
  if (out.empty()) throw ValidationError("empty algorithm list");
  return out;
}

bool algo_is_exponential(AlgoId id) {
  return id == AlgoId::SaEx || id == AlgoId::ClucbEx;
}

bool algo_is_static(AlgoId id) {
  return id == AlgoId::Icb || id == AlgoId::Saqm || id == AlgoId::SaEx;
}

int cmd_run(const ExperimentConfig& config, std::ostream& out) {
  validate_common(config);
  if (config.algos.size() != 1)
    throw ValidationError("run takes exactly one algorithm");
  const AlgoId id = config.algos.front();

  const std::uint64_t inst_seed = instance_seed(config.master_seed, 0);
  const std::unique_ptr<Environment> env =
      make_environment(config, config.delta_min, inst_seed);
  const BanditInstance& inst = env->instance();
  if (config.algo.exact_ratio || algo_is_exponential(id))
    check_enumeration_guard(inst.d, inst.k);
  Allocation alloc;
  if (algo_is_static(id)) alloc = make_allocation(config, inst);

  const std::string instance_label =
      config.labels_path.empty() ? fmt(config.delta_min) : config.labels_path;
  const size_t reps = static_cast<size_t>(config.reps);
  std::vector<std::string> rows(reps);
  std::vector<std::string> traces(reps);
  run_jobs(config.workers, reps, [&](size_t i) {
    AlgoConfig cfg = config.algo;
    cfg.seed = run_seed(inst_seed, static_cast<int>(i));
    cfg.record_trace = cfg.exact_ratio;
    const RunOutcome res =
        dispatch(id, *env, algo_is_static(id) ? &alloc : nullptr, cfg);
    std::ostringstream row;
    row << algo_name(id) << ',' << cfg.seed << ',' << inst.d << ',' << inst.k << ','
        << instance_label << ',' << fmt(cfg.epsilon) << ',' << fmt(cfg.delta) << ','
        << res.samples << ',' << (eps_optimal(inst, res.output, cfg.epsilon) ? 1 : 0)
        << ',' << fmt_time(res.wall_time);
    rows[i] = row.str();
    if (cfg.record_trace && !config.out_path.empty()) traces[i] = trace_csv(res.trace);
  });

  out << "algorithm,seed,d,k,instance,epsilon,delta,samples,correct,wall_time\n";
  for (const std::string& row : rows) out << row << '\n';
  for (size_t i = 0; i < reps; ++i)
    if (!traces[i].empty())
      write_text_file(config.out_path + ".trace" + std::to_string(i) + ".csv", traces[i]);
  return 0;
}

int cmd_sweep(const ExperimentConfig& config, const std::vector<double>& delta_grid,
              std::ostream& out) {
  validate_common(config);
  if (delta_grid.empty()) throw ValidationError("sweep needs a non-empty delta_min grid");
  if (!config.labels_path.empty())
    throw ValidationError("sweep is defined over synthetic instances only");

  const size_t points = delta_grid.size();
  std::vector<std::unique_ptr<Environment>> envs(points);
  for (size_t g = 0; g < points; ++g)
    envs[g] = make_environment(config, delta_grid[g],
                               instance_seed(config.master_seed, static_cast<int>(g)));
  Allocation alloc;
  bool need_alloc = false;
  for (AlgoId id : config.algos) need_alloc = need_alloc || algo_is_static(id);
  if (need_alloc) alloc = make_allocation(config, envs.front()->instance());

  const size_t reps = static_cast<size_t>(config.reps);
  const size_t jobs = config.algos.size() * points * reps;
  std::vector<std::string> rows(jobs);
  run_jobs(config.workers, jobs, [&](size_t i) {
    const size_t ai = i / (points * reps);
    const size_t gi = (i / reps) % points;
    const size_t ri = i % reps;
    const AlgoId id = config.algos[ai];
    AlgoConfig cfg = config.algo;
    cfg.seed = run_seed(instance_seed(config.master_seed, static_cast<int>(gi)),
                        static_cast<int>(ri));
    const RunOutcome res =
        dispatch(id, *envs[gi], algo_is_static(id) ? &alloc : nullptr, cfg);
    std::ostringstream row;
    row << algo_name(id) << ',' << fmt(delta_grid[gi]) << ',' << ri << ','
        << res.samples << ',' << fmt_time(res.wall_time);
    rows[i] = row.str();
  });

  out << "algorithm,delta_min,rep,samples,time\n";
  for (const std::string& row : rows) out << row << '\n';
  return 0;
}

int cmd_bench_runtime(const ExperimentConfig& config, const std::vector<int>& d_list,
                      std::ostream& out) {
  validate_common(config);
  if (d_list.empty()) throw ValidationError("bench-runtime needs a non-empty d list");

  out << "algorithm,d,k,samples,sec_per_round\n";
  for (AlgoId id : config.algos) {
    for (size_t di = 0; di < d_list.size(); ++di) {
      const int d = d_list[di];
      if (d < 2) throw ValidationError("bench-runtime needs d >= 2");
      const int k = std::max(1, d / 2);

      ExperimentConfig point = config;
      point.d = d;
      point.k = k;
      point.labels_path.clear();
      const std::uint64_t seed =
          instance_seed(config.master_seed, 2000 + static_cast<int>(di));
      const std::unique_ptr<Environment> env = make_environment(point, 1.0, seed);
      Allocation alloc;
      if (algo_is_static(id)) alloc = make_allocation(point, env->instance());
      const long init_cost = algo_is_static(id)
                                 ? static_cast<long>(alloc.support.size())
                                 : 2L * d;
      const long evals = algo_is_exponential(id) ? 6 : 400;

      AlgoConfig cfg = config.algo;
      cfg.epsilon = 0.0;  // keep the stopping rule disarmed inside the budget
      cfg.record_trace = true;
      cfg.exact_ratio = false;
      cfg.seed = run_seed(seed, 0);
      const bool timed_rounds = id != AlgoId::Me && id != AlgoId::Lucb;
      cfg.max_rounds = timed_rounds
                           ? std::min(config.algo.max_rounds, init_cost + 2 * evals)
                           : std::min(config.algo.max_rounds, 20000L);

      // Warm-up run, discarded.
      {
        AlgoConfig warm = cfg;
        warm.max_rounds = std::min(cfg.max_rounds, init_cost + 8);
        dispatch(id, *env, algo_is_static(id) ? &alloc : nullptr, warm);
      }
      const RunOutcome res =
          dispatch(id, *env, algo_is_static(id) ? &alloc : nullptr, cfg);
      out << algo_name(id) << ',' << d << ',' << k << ',' << res.samples << ','
          << fmt(per_round_seconds(res)) << '\n';
    }
  }
  return 0;
}

int cmd_approx_eval(const ExperimentConfig& config, const std::vector<double>& delta_grid,
                    long rounds, std::ostream& out) {
  validate_common(config);
  if (config.algos.size() != 1 ||
      (config.algos.front() != AlgoId::Saqm && config.algos.front() != AlgoId::ClucbQm))
    throw ValidationError("approx-eval replays saqm or clucb-qm");
  if (delta_grid.empty()) throw ValidationError("approx-eval needs a delta_min grid");
  if (rounds < 1) throw ValidationError("approx-eval needs rounds >= 1");
  if (!config.labels_path.empty())
    throw ValidationError("approx-eval is defined over synthetic instances only");
  check_enumeration_guard(config.d, config.k);
  const AlgoId id = config.algos.front();

  const size_t points = delta_grid.size();
  std::vector<std::unique_ptr<Environment>> envs(points);
  for (size_t g = 0; g < points; ++g)
    envs[g] = make_environment(config, delta_grid[g],
                               instance_seed(config.master_seed, static_cast<int>(g)));
  Allocation alloc;
  if (algo_is_static(id)) alloc = make_allocation(config, envs.front()->instance());

  const size_t reps = static_cast<size_t>(config.reps);
  const size_t jobs = points * reps;
  std::vector<std::string> blocks(jobs);
  run_jobs(config.workers, jobs, [&](size_t i) {
    const size_t gi = i / reps;
    const size_t ri = i % reps;
    AlgoConfig cfg = config.algo;
    cfg.seed = run_seed(instance_seed(config.master_seed, static_cast<int>(gi)),
                        static_cast<int>(ri));
    cfg.epsilon = 0.0;  // recording replay: the stopping rule never fires
    cfg.record_trace = true;
    cfg.exact_ratio = true;
    cfg.max_rounds = rounds;
    const RunOutcome res =
        dispatch(id, *envs[gi], algo_is_static(id) ? &alloc : nullptr, cfg);
    std::ostringstream block;
    for (const TraceRow& row : res.trace) {
      const double additive =
          row.ratio > 0.0 ? row.z * (1.0 - row.ratio) / row.ratio : 0.0;
      block << fmt(delta_grid[gi]) << ',' << ri << ',' << row.round << ','
            << fmt(row.ratio) << ',' << fmt(additive) << '\n';
    }
    blocks[i] = block.str();
  });

  out << "delta_min,rep,round,ratio,additive_error\n";
  for (const std::string& block : blocks) out << block;
  return 0;
}

int cmd_gen_instance(const ExperimentConfig& config, const std::string& labels_out,
                     int tasks, std::ostream& out) {
  SyntheticSpec spec;
  spec.d = config.d;
  spec.k = config.k;
  spec.delta_min = config.delta_min;
  spec.noise_std = config.noise_std;
  spec.seed = instance_seed(config.master_seed, 0);
  const BanditInstance inst = generate_synthetic(spec);
  const std::string text = write_instance(inst);
  if (config.out_path.empty())
    out << text;
  else
    write_text_file(config.out_path, text);

  if (!labels_out.empty()) {
    if (tasks < 1) throw ValidationError("label generation needs tasks >= 1");
    std::vector<double> accuracies(inst.theta.size());
    for (size_t i = 0; i < accuracies.size(); ++i)
      accuracies[i] = std::min(1.0, std::max(0.0, (inst.theta[i] + 1.0) / 2.0));
    write_text_file(labels_out, make_crowd_labels(accuracies, tasks));
  }
  return 0;
}

}  // namespace cpe

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cpe/errors.hpp"
#include "cpe/harness.hpp"

namespace {

struct CliOptions {
  cpe::ExperimentConfig config;
  std::string algo_csv = "saqm";
  std::string alloc_name = "uniform";
  std::vector<double> delta_grid{1.0};
  std::vector<int> d_list;
  long rounds = 10000;
  std::string labels_out;
  int tasks = 1000;
};

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
  cpe::ExperimentConfig& c = opt.config;
  cmd->add_option("--algo", opt.algo_csv,
                  "algorithm(s): icb, saqm, sa-ex, clucb-qm, clucb, clucb-ex, me, lucb "
                  "(comma-separated where multiple make sense)");
  cmd->add_option("--d", c.d, "number of base arms (synthetic)");
  cmd->add_option("--k", c.k, "super-arm size");
  cmd->add_option("--delta-min", opt.delta_grid,
                  "synthetic best-vs-second-best gap(s)")
      ->delimiter(',');
  cmd->add_option("--eps", c.algo.epsilon, "accuracy target epsilon >= 0");
  cmd->add_option("--delta", c.algo.delta, "failure probability in (0,1)");
  cmd->add_option("--alpha", c.algo.alpha, "stopping-rule approximation factor");
  cmd->add_option("--omega", c.algo.omega, "ridge weight of the regularized estimator");
  cmd->add_option("--s-bound", c.algo.s_bound, "bound on ||theta||_2 (0 = sqrt(d))");
  cmd->add_option("--alloc", opt.alloc_name, "static allocation: uniform or g");
  cmd->add_option("--reps", c.reps, "independent repetitions");
  cmd->add_option("--seed", c.master_seed, "master seed (CPE_SEED overrides)");
  cmd->add_option("--labels", c.labels_path, "worker-label file (real-data environment)");
  cmd->add_option("--out", c.out_path, "output file (default: stdout)");
  cmd->add_flag("--exact-ratio", c.algo.exact_ratio,
                "also evaluate the exact stopping statistic each round");
  cmd->add_flag("--enable-exponential", c.enable_exponential,
                "allow the enumeration-based reference algorithms");
  cmd->add_option("--max-rounds", c.algo.max_rounds, "hard cap on total pulls");
  cmd->add_option("--workers", c.workers, "worker threads (0 = all processors)");
}

int dispatch(const std::string& name, CliOptions& opt, std::ostream& out) {
  cpe::ExperimentConfig& config = opt.config;
  config.algos = cpe::parse_algo_list(opt.algo_csv);
  if (opt.alloc_name == "uniform")
    config.alloc_kind = cpe::AllocKind::Uniform;
  else if (opt.alloc_name == "g")
    config.alloc_kind = cpe::AllocKind::G;
  else
    throw cpe::ValidationError("unknown allocation '" + opt.alloc_name +
                               "'; expected uniform or g");
  if (const char* env_seed = std::getenv("CPE_SEED"))
    config.master_seed = std::strtoull(env_seed, nullptr, 10);

  if (name == "run") {
    if (opt.delta_grid.size() != 1)
      throw cpe::ValidationError("run takes a single --delta-min value");
    config.delta_min = opt.delta_grid.front();
    return cpe::cmd_run(config, out);
  }
  if (name == "sweep") return cpe::cmd_sweep(config, opt.delta_grid, out);
  if (name == "bench-runtime") return cpe::cmd_bench_runtime(config, opt.d_list, out);
  if (name == "approx-eval")
    return cpe::cmd_approx_eval(config, opt.delta_grid, opt.rounds, out);
  if (name == "gen-instance") {
    if (opt.delta_grid.size() != 1)
      throw cpe::ValidationError("gen-instance takes a single --delta-min value");
    config.delta_min = opt.delta_grid.front();
    return cpe::cmd_gen_instance(config, opt.labels_out, opt.tasks, out);
  }
  throw cpe::ValidationError("unknown subcommand " + name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"top-k super-arm identification from full-bandit feedback"};
  app.require_subcommand(1);
  CliOptions opt;

  CLI::App* run = app.add_subcommand("run", "seeded repetitions, one summary row each");
  add_common_flags(run, opt);

  CLI::App* sweep = app.add_subcommand("sweep", "sample complexity over a delta_min grid");
  add_common_flags(sweep, opt);

  CLI::App* bench =
      app.add_subcommand("bench-runtime", "mean wall time per decision round");
  add_common_flags(bench, opt);
  bench->add_option("--d-list", opt.d_list, "dimensions to benchmark (k = d/2)")
      ->delimiter(',')
      ->required();

  CLI::App* approx =
      app.add_subcommand("approx-eval", "per-round approximation-ratio series");
  add_common_flags(approx, opt);
  approx->add_option("--rounds", opt.rounds, "recorded rounds per repetition");

  CLI::App* gen = app.add_subcommand("gen-instance", "write a synthetic instance file");
  add_common_flags(gen, opt);
  gen->add_option("--labels-out", opt.labels_out, "also write a companion label file");
  gen->add_option("--tasks", opt.tasks, "labelled tasks per worker");

  CLI11_PARSE(app, argc, argv);

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    // Result tables go to --out when given; gen-instance names its own files.
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!opt.config.out_path.empty() && name != "gen-instance") {
      file.open(opt.config.out_path);
      if (!file) throw cpe::FileError("cannot open for writing: " + opt.config.out_path);
      out = &file;
    }
    return dispatch(name, opt, *out);
  } catch (const cpe::FileError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

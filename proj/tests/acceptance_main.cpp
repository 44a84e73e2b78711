// Acceptance suite: one criterion per run of main(argv[1] in 1..10), or all
// when no argument is given. Each criterion prints exactly one line,
//   criterion N (label): PASS|FAIL - detail
// and the process exits 0 only if every requested criterion passed.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpe/algorithms.hpp"
#include "cpe/allocation.hpp"
#include "cpe/cem.hpp"
#include "cpe/combinatorics.hpp"
#include "cpe/environments.hpp"
#include "cpe/errors.hpp"
#include "cpe/estimation.hpp"
#include "cpe/harness.hpp"
#include "cpe/instance.hpp"
#include "cpe/oracles.hpp"
#include "cpe/rng.hpp"

namespace {

using namespace cpe;

struct Check {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// --- minimal CSV handling for harness output ---------------------------------

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int col(const std::string& name) const {
    for (size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    throw std::runtime_error("missing column " + name);
  }
};

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  for (char c : line) {
    if (c == sep) {
      out.push_back(field);
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  out.push_back(field);
  return out;
}

Table parse_csv(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (t.header.empty())
      t.header = split(line, ',');
    else
      t.rows.push_back(split(line, ','));
  }
  return t;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Random symmetric PD matrix with eigenvalues in [lo, hi].
Eigen::MatrixXd random_pd(int n, Rng& rng, double lo = 0.2, double hi = 2.0) {
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = uniform(rng, -1.0, 1.0);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  const Eigen::MatrixXd q = qr.householderQ();
  Eigen::VectorXd eig(n);
  for (int i = 0; i < n; ++i) eig(i) = uniform(rng, lo, hi);
  return q * eig.asDiagonal() * q.transpose();
}

// Matches the estimator's own invertibility guard so a true result here means
// inverse-dependent calls cannot throw.
bool spans(const LeastSquaresState& state) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(state.design(),
                                                           Eigen::EigenvaluesOnly);
  const double largest = eig.eigenvalues()(state.dim() - 1);
  return eig.eigenvalues()(0) > 1e-10 * std::max(1.0, largest);
}

std::vector<SuperArm> full_class(int d, int k) {
  std::vector<SuperArm> arms;
  arms.reserve(static_cast<size_t>(binomial(d, k)));
  for_each_subset(d, k, [&](const std::vector<int>& idx) {
    arms.push_back(SuperArm::of(idx, d));
  });
  return arms;
}

// --- criterion 1: per-round approximation ratio of the quadratic surrogate ---

Check approx_ratio() {
  ExperimentConfig cfg;
  cfg.algos = {AlgoId::Saqm};
  cfg.d = 10;
  cfg.k = 5;
  cfg.alloc_kind = AllocKind::G;
  cfg.reps = 10;
  cfg.master_seed = 1;
  cfg.workers = 1;
  cfg.algo.delta = 0.05;
  std::ostringstream out;
  cmd_approx_eval(cfg, {0.1, 1.0}, 10000, out);

  const Table t = parse_csv(out.str());
  const int rc = t.col("ratio");
  double sum = 0.0, lo = 1e300;
  long good = 0;
  for (const auto& row : t.rows) {
    const double r = std::stod(row[static_cast<size_t>(rc)]);
    sum += r;
    lo = std::min(lo, r);
    good += r >= 0.9;
  }
  const double n = static_cast<double>(t.rows.size());
  const double mean = sum / n;
  const double frac = static_cast<double>(good) / n;
  return {!t.rows.empty() && mean >= 0.85 && frac >= 0.8,
          "mean " + fmt(mean) + ", min " + fmt(lo) + ", " + fmt(100.0 * frac) +
              "% of " + std::to_string(t.rows.size()) + " rounds >= 0.9 " +
              "(need mean >= 0.85, >= 80%)"};
}

// --- criterion 2: exact-oracle value bound (1/(k-1)) ximin/ximax * OPT -------

Check exact_oracle_bound() {
  Rng rng(21);
  int violations = 0;
  double worst = 1e300;
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 4 + static_cast<int>(uniform_index(rng, 7));
    const int kmax = std::min(5, d - 1);
    const int k = 2 + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(kmax - 1)));
    const Eigen::MatrixXd w = random_pd(d, rng);
    const double alpha = theoretical_alpha(w, k);
    const QMResult got = quadratic_maximize(w, k, alpha, brute_force_dks);
    const QPOptimum opt = brute_force_qp(w, k);
    worst = std::min(worst, got.value / (alpha * opt.value));
    if (got.value < alpha * opt.value * (1.0 - 1e-9)) ++violations;
  }
  return {violations == 0, std::to_string(violations) +
                               " violations in 200 trials, worst value/(alpha*OPT) " +
                               fmt(worst)};
}

// --- criterion 3: weight-transform lemmas on full subset enumeration ---------

Check weight_transform_lemmas() {
  Rng rng(22);
  long negative_edges = 0, lower_viol = 0, ratio_viol = 0, subsets = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + static_cast<int>(uniform_index(rng, 7));
    const Eigen::MatrixXd w = random_pd(d, rng);
    const TransformedGraph graph = transform_weights(w);
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        if (graph.wtilde(i, j) < -1e-12) ++negative_edges;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(w);
    const double cond = eig.eigenvalues().maxCoeff() / eig.eigenvalues().minCoeff();
    for (int s = 2; s <= d; ++s) {
      for_each_subset(d, s, [&](const std::vector<int>& idx) {
        const SuperArm arm = SuperArm::of(idx, d);
        const double plain = subset_weight(w, arm);
        const double transformed = transformed_subset_weight(graph, arm);
        ++subsets;
        if (plain > transformed * (1.0 + 1e-12) + 1e-12) ++lower_viol;
        if (transformed > (s - 1) * cond * plain * (1.0 + 1e-9) + 1e-12) ++ratio_viol;
      });
    }
  }
  return {negative_edges == 0 && lower_viol == 0 && ratio_viol == 0,
          std::to_string(subsets) + " subsets over 100 matrices: " +
              std::to_string(negative_edges) + " negative edges, " +
              std::to_string(lower_viol) + " lower-bound and " +
              std::to_string(ratio_viol) + " ratio violations"};
}

// --- criterion 4: epsilon-optimal outputs in 20/20 seeded runs each ----------

Check pac_correctness() {
  const struct {
    AlgoId id;
    AllocKind alloc;
  } plans[] = {{AlgoId::Icb, AllocKind::G},
               {AlgoId::Saqm, AllocKind::G},
               {AlgoId::ClucbQm, AllocKind::Uniform},
               {AlgoId::Clucb, AllocKind::Uniform}};
  std::string detail;
  bool pass = true;
  for (const auto& plan : plans) {
    ExperimentConfig cfg;
    cfg.algos = {plan.id};
    cfg.d = 10;
    cfg.k = 5;
    cfg.delta_min = 1.0;
    cfg.alloc_kind = plan.alloc;
    cfg.reps = 20;
    cfg.master_seed = 1;
    cfg.workers = 1;
    cfg.algo.epsilon = 0.5;
    cfg.algo.delta = 0.05;
    std::ostringstream out;
    cmd_run(cfg, out);
    const Table t = parse_csv(out.str());
    const int cc = t.col("correct");
    long correct = 0;
    for (const auto& row : t.rows) correct += row[static_cast<size_t>(cc)] == "1";
    pass = pass && t.rows.size() == 20 && correct == 20;
    if (!detail.empty()) detail += ", ";
    detail += std::string(algo_name(plan.id)) + " " + std::to_string(correct) + "/20";
  }
  return {pass, detail};
}

// --- criterion 5: per-round runtime separation --------------------------------

Check runtime_separation() {
  ExperimentConfig both;
  both.algos = {AlgoId::Saqm, AlgoId::SaEx};
  both.enable_exponential = true;
  both.master_seed = 1;
  both.workers = 1;
  std::ostringstream out20;
  cmd_bench_runtime(both, {20}, out20);
  const Table t20 = parse_csv(out20.str());
  const int ac = t20.col("algorithm");
  const int sc = t20.col("sec_per_round");
  double saqm20 = 0.0, ex20 = 0.0;
  for (const auto& row : t20.rows) {
    const double sec = std::stod(row[static_cast<size_t>(sc)]);
    if (row[static_cast<size_t>(ac)] == "saqm") saqm20 = sec;
    if (row[static_cast<size_t>(ac)] == "sa-ex") ex20 = sec;
  }

  ExperimentConfig solo;
  solo.algos = {AlgoId::Saqm};
  solo.master_seed = 1;
  solo.workers = 1;
  std::ostringstream scale_out;
  cmd_bench_runtime(solo, {10, 24}, scale_out);
  const Table ts = parse_csv(scale_out.str());
  const int dc = ts.col("d");
  const int sc2 = ts.col("sec_per_round");
  double at10 = 0.0, at24 = 0.0;
  for (const auto& row : ts.rows) {
    const double sec = std::stod(row[static_cast<size_t>(sc2)]);
    if (row[static_cast<size_t>(dc)] == "10") at10 = sec;
    if (row[static_cast<size_t>(dc)] == "24") at24 = sec;
  }

  const double separation = ex20 / saqm20;
  const double growth = at24 / at10;
  return {separation >= 100.0 && growth <= 20.0,
          "sa-ex/saqm per round at (20,10): " + fmt(separation) +
              "x (need >= 100), saqm d=24 vs d=10: " + fmt(growth) + "x (need <= 20)"};
}

// --- criterion 6: oracles match independent enumeration ----------------------

Check oracle_equivalence() {
  Rng rng(23);
  int mismatches = 0;
  const double tol = 1e-9;
  auto close = [&](double a, double b) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
  };
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 4 + static_cast<int>(uniform_index(rng, 9));
    const int kmax = std::min(6, d - 1);
    const int k = 2 + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(kmax - 1)));
    std::vector<double> theta(static_cast<size_t>(d));
    for (double& v : theta) v = standard_normal(rng);
    std::vector<double> radii(static_cast<size_t>(d));
    for (double& v : radii) v = uniform(rng, 0.01, 1.0);
    const double c_t = uniform(rng, 0.0, 1.5);

    const auto value_of = [&](const SuperArm& arm) {
      double s = 0.0;
      for (int e : arm.members) s += theta[static_cast<size_t>(e)];
      return s;
    };

    // Reference enumeration: best and runner-up by summed score.
    SuperArm best_arm, second_arm;
    double best = -1e300, second = -1e300;
    for_each_subset(d, k, [&](const std::vector<int>& idx) {
      const SuperArm arm = SuperArm::of(idx, d);
      const double v = value_of(arm);
      if (v > best) {
        second = best;
        second_arm = best_arm;
        best = v;
        best_arm = arm;
      } else if (v > second) {
        second = v;
        second_arm = arm;
      }
    });
    const ScoredSelection am = argmax_topk(theta, k);
    const ScoredSelection sb = second_best_topk(theta, am.arm);
    if (!close(am.value, best) || am.arm != best_arm) ++mismatches;
    if (!close(sb.value, second) || sb.arm != second_arm) ++mismatches;

    // Per-coordinate confidence maximization against its definition.
    double p1 = -1e300;
    SuperArm p1_arm;
    for_each_subset(d, k, [&](const std::vector<int>& idx) {
      const SuperArm arm = SuperArm::of(idx, d);
      if (arm == am.arm) return;
      double width = 0.0;
      for (int e : arm.members)
        if (!am.arm.contains(e)) width += radii[static_cast<size_t>(e)];
      for (int e : am.arm.members)
        if (!arm.contains(e)) width += radii[static_cast<size_t>(e)];
      const double v = value_of(arm) + c_t * width;
      if (v > p1) {
        p1 = v;
        p1_arm = arm;
      }
    });
    const ScoredSelection got = solve_p1(theta, radii, c_t, am.arm);
    if (!close(got.value, p1) || got.arm != p1_arm) ++mismatches;

    // Exact ellipsoid gap against its definition.
    const Eigen::MatrixXd a_inv = random_pd(d, rng, 0.3, 3.0);
    double gap = -1e300;
    const Eigen::VectorXd chi_hat = am.arm.indicator(d);
    for_each_subset(d, k, [&](const std::vector<int>& idx) {
      const SuperArm arm = SuperArm::of(idx, d);
      if (arm == am.arm) return;
      const Eigen::VectorXd diff = arm.indicator(d) - chi_hat;
      const double v =
          value_of(arm) + c_t * std::sqrt(diff.dot(a_inv * diff)) - am.value;
      gap = std::max(gap, v);
    });
    if (!close(brute_force_cem_gap(a_inv, theta, c_t, am.arm), gap)) ++mismatches;

    // Exact-oracle quadratic maximization against transformed-weight enumeration.
    const Eigen::MatrixXd w = random_pd(d, rng);
    double best_tw = -1e300;
    SuperArm tw_arm;
    for_each_subset(d, k, [&](const std::vector<int>& idx) {
      const SuperArm arm = SuperArm::of(idx, d);
      double tw = 0.0;
      for (size_t a = 0; a < idx.size(); ++a)
        for (size_t b = a + 1; b < idx.size(); ++b) {
          const int i = idx[a], j = idx[b];
          tw += w(i, j) + w(i, i) + w(j, j);
        }
      if (tw > best_tw) {
        best_tw = tw;
        tw_arm = arm;
      }
    });
    double tw_form = 0.0;
    for (int i : tw_arm.members)
      for (int j : tw_arm.members) tw_form += w(i, j);
    const QMResult qm = quadratic_maximize(w, k, 1.0, brute_force_dks);
    if (qm.subset != tw_arm || !close(qm.value, tw_form)) ++mismatches;
  }
  return {mismatches == 0,
          std::to_string(mismatches) + " mismatches across 200 instances x 5 oracles"};
}

// --- criterion 7: estimator maintenance properties ----------------------------

Check estimator_properties() {
  Rng rng(24);
  double worst_resid = 0.0, worst_rel = 0.0;
  for (int h = 0; h < 20; ++h) {
    const int d = 4 + static_cast<int>(uniform_index(rng, 5));
    const int k = 1 + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(d - 1)));
    LeastSquaresState state(d, 1.0);
    std::vector<int> order(static_cast<size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    for (int t = 0; t < 1000; ++t) {
      for (int i = 0; i < k; ++i) {
        const size_t j = static_cast<size_t>(i) +
                         static_cast<size_t>(uniform_index(
                             rng, static_cast<std::uint64_t>(d - i)));
        std::swap(order[static_cast<size_t>(i)], order[j]);
      }
      const SuperArm arm = SuperArm::of({order.begin(), order.begin() + k}, d);
      state.update(arm, standard_normal(rng));
    }
    if (!spans(state)) return {false, "design failed to span after 1000 random pulls"};
    worst_resid = std::max(worst_resid, state.inverse_residual());
    const Eigen::MatrixXd direct = state.design().inverse();
    worst_rel = std::max(worst_rel,
                         (state.inverse() - direct).norm() / direct.norm());
  }

  long dominance_viol = 0;
  for (int block = 0; block < 100; ++block) {
    const int d = 3 + static_cast<int>(uniform_index(rng, 6));
    const int k = 1 + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(d - 1)));
    LeastSquaresState state(d, 1.0);
    std::vector<int> order(static_cast<size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    while (!spans(state)) {
      for (int i = 0; i < k; ++i) {
        const size_t j = static_cast<size_t>(i) +
                         static_cast<size_t>(uniform_index(
                             rng, static_cast<std::uint64_t>(d - i)));
        std::swap(order[static_cast<size_t>(i)], order[j]);
      }
      state.update(SuperArm::of({order.begin(), order.begin() + k}, d),
                   standard_normal(rng));
    }
    for (int rep = 0; rep < 10; ++rep) {
      Eigen::VectorXd x(d);
      for (int i = 0; i < d; ++i) x(i) = uniform(rng, -1.0, 1.0);
      if (state.weighted_norm(x) > state.diag_bound(x) + 1e-12) ++dominance_viol;
    }
  }

  double worst_recovery = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const struct {
      int d, k;
    } shapes[] = {{5, 2}, {7, 3}, {8, 3}, {9, 4}, {7, 2}};
    const auto shape = shapes[trial % 5];
    std::vector<double> theta(static_cast<size_t>(shape.d));
    for (double& v : theta) v = standard_normal(rng);
    const BanditInstance inst =
        BanditInstance::make(shape.d, shape.k, theta, {NoiseKind::Gaussian, 0.0});
    const InstanceEnvironment env(inst);
    const std::vector<SuperArm> support = default_support(shape.d, shape.k, rng);
    LeastSquaresState state(shape.d, inst.super_arm_sigma());
    for (const SuperArm& arm : support) state.update(arm, env.pull(arm, rng));
    const Eigen::VectorXd hat = state.theta_hat();
    for (int i = 0; i < shape.d; ++i)
      worst_recovery =
          std::max(worst_recovery, std::abs(hat(i) - theta[static_cast<size_t>(i)]));
  }

  const bool pass = worst_resid < 1e-8 && worst_rel < 1e-8 && dominance_viol == 0 &&
                    worst_recovery <= 1e-9;
  return {pass, "inverse residual " + fmt(worst_resid) + ", direct-inverse gap " +
                    fmt(worst_rel) + " (need < 1e-8), " + std::to_string(dominance_viol) +
                    "/1000 dominance violations, noiseless recovery error " +
                    fmt(worst_recovery) + " (need <= 1e-9)"};
}

// --- criterion 8: empirical coverage of the ellipsoid bound -------------------

Check confidence_coverage() {
  Rng setup(25);
  std::vector<double> theta(6);
  for (double& v : theta) v = uniform(setup, -1.0, 1.0);
  const BanditInstance inst =
      BanditInstance::make(6, 3, theta, {NoiseKind::BoundedUniform, 0.5});
  const InstanceEnvironment env(inst);
  const Allocation alloc = uniform_allocation(6, default_support(6, 3, setup));
  const std::vector<SuperArm> arms = full_class(6, 3);
  const double num_arms = binomial(6, 3);
  const long supp = alloc.size();

  int violated_histories = 0;
  for (int h = 0; h < 500; ++h) {
    Rng rng(mix_seed(2026, static_cast<std::uint64_t>(h)));
    TrackingSampler tracker(alloc);
    LeastSquaresState state(6, inst.super_arm_sigma());
    bool violated = false;
    for (long t = 0; t < 1000; ++t) {
      const int idx = t < supp ? static_cast<int>(t) : tracker.pick();
      tracker.record(idx);
      const SuperArm& pulled = alloc.support[static_cast<size_t>(idx)];
      state.update(pulled, env.pull(pulled, rng));
      const long now = t + 1;
      if (now != 10 && now != 100 && now != 1000) continue;
      if (!spans(state)) {
        violated = true;
        continue;
      }
      const double c_t = state.ellipsoid_radius(num_arms, 0.1);
      for (const SuperArm& arm : arms) {
        const double err = std::abs(state.theta_hat_of(arm) - expected_reward(inst, arm));
        if (err > c_t * state.weighted_norm(arm) + 1e-12) violated = true;
      }
    }
    violated_histories += violated;
  }
  const double frac = violated_histories / 500.0;
  return {frac <= 0.1, std::to_string(violated_histories) +
                           "/500 histories violated at t in {10,100,1000} (" + fmt(frac) +
                           ", need <= 0.1; support size " + std::to_string(supp) + ")"};
}

// --- criterion 9: tracking counts stay inside the envelope --------------------

Check tracking_envelope() {
  Rng rng(26);
  long checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 3 + static_cast<int>(uniform_index(rng, 8));
    const int k = 1 + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(d - 1)));
    std::vector<SuperArm> support = default_support(d, k, rng);
    std::vector<double> weights(support.size());
    double total = 0.0;
    for (double& w : weights) {
      w = uniform(rng, 0.05, 1.0);
      total += w;
    }
    for (double& w : weights) w /= total;
    const Allocation alloc = Allocation::make(d, std::move(support), std::move(weights));
    TrackingSampler tracker(alloc, /*validate=*/true);
    std::vector<long> counts(static_cast<size_t>(alloc.size()), 0);
    try {
      for (long t = 1; t <= 3000; ++t) {
        ++counts[static_cast<size_t>(tracker.pull_next())];
        for (int m = 0; m < alloc.size(); ++m) {
          const double lam = alloc.weights[static_cast<size_t>(m)];
          const double cnt = static_cast<double>(counts[static_cast<size_t>(m)]);
          if (cnt < lam * static_cast<double>(t) - static_cast<double>(alloc.size()) - 1e-9 ||
              cnt > lam * static_cast<double>(t) + 1.0 + 1e-9)
            return {false, "envelope violated externally at t=" + std::to_string(t)};
          ++checked;
        }
      }
    } catch (const TrackingError& e) {
      return {false, std::string("TrackingError: ") + e.what()};
    }
  }

  // Validated end-to-end runs over the full-class G-allocation.
  const Allocation galloc = compute_g_allocation(10, full_class(10, 5), 200);
  const InstanceEnvironment env(generate_synthetic(
      {.d = 10, .k = 5, .delta_min = 1.0, .noise_std = 1.0, .seed = 9}));
  AlgoConfig cfg;
  cfg.epsilon = 0.5;
  cfg.delta = 0.05;
  cfg.max_rounds = 3000;
  cfg.seed = 9;
  cfg.validate_tracking = true;
  try {
    run_icb(env, galloc, cfg);
    run_saqm(env, galloc, cfg);
  } catch (const TrackingError& e) {
    return {false, std::string("TrackingError in validated run: ") + e.what()};
  }
  return {true, std::to_string(checked) +
                    " envelope checks over 100 allocations x 3000 steps, plus validated "
                    "icb/saqm runs, zero violations"};
}

// --- criterion 10: sample counts non-increasing in the gap --------------------

Check sweep_trend() {
  ExperimentConfig cfg;
  cfg.algos = {AlgoId::Saqm, AlgoId::Icb};
  cfg.d = 10;
  cfg.k = 5;
  cfg.alloc_kind = AllocKind::G;
  cfg.reps = 10;
  cfg.master_seed = 1;
  cfg.workers = 1;
  cfg.algo.epsilon = 0.5;
  cfg.algo.delta = 0.05;
  const std::vector<double> grid{0.2, 0.4, 0.6, 0.8, 1.0};
  std::ostringstream out;
  cmd_sweep(cfg, grid, out);

  ExperimentConfig lucb = cfg;
  lucb.algos = {AlgoId::Lucb};
  std::ostringstream lucb_out;
  cmd_sweep(lucb, grid, lucb_out);

  const Table t = parse_csv(out.str());
  const int ac = t.col("algorithm");
  const int dc = t.col("delta_min");
  const int sc = t.col("samples");
  std::string detail;
  bool pass = true;
  for (const std::string algo : {"saqm", "icb"}) {
    std::vector<double> medians;
    for (double dm : grid) {
      std::vector<double> samples;
      for (const auto& row : t.rows)
        if (row[static_cast<size_t>(ac)] == algo &&
            std::abs(std::stod(row[static_cast<size_t>(dc)]) - dm) < 1e-12)
          samples.push_back(std::stod(row[static_cast<size_t>(sc)]));
      if (samples.size() != 10) return {false, algo + " row count off"};
      medians.push_back(median(samples));
    }
    bool mono = true;
    for (size_t i = 0; i + 1 < medians.size(); ++i) mono = mono && medians[i] >= medians[i + 1];
    pass = pass && mono;
    if (!detail.empty()) detail += "; ";
    detail += algo + " medians";
    for (double m : medians) detail += " " + fmt(m, 6);
    detail += mono ? " (non-increasing)" : " (NOT monotone)";
  }

  const Table lt = parse_csv(lucb_out.str());
  const int lsc = lt.col("samples");
  bool lucb_ok = lt.rows.size() == 50;
  for (const auto& row : lt.rows)
    lucb_ok = lucb_ok && std::stod(row[static_cast<size_t>(lsc)]) > 0;
  pass = pass && lucb_ok;
  detail += "; lucb " + std::to_string(lt.rows.size()) + "/50 rows (trend exempt)";
  return {pass, detail};
}

struct Criterion {
  const char* label;
  Check (*run)();
};

constexpr Criterion kCriteria[] = {
    {"approx-ratio", approx_ratio},
    {"exact-oracle-bound", exact_oracle_bound},
    {"weight-transform-lemmas", weight_transform_lemmas},
    {"pac-correctness", pac_correctness},
    {"runtime-separation", runtime_separation},
    {"oracle-equivalence", oracle_equivalence},
    {"estimator-properties", estimator_properties},
    {"confidence-coverage", confidence_coverage},
    {"tracking-envelope", tracking_envelope},
    {"sweep-trend", sweep_trend},
};

}  // namespace

int main(int argc, char** argv) {
  int lo = 1, hi = 10;
  if (argc > 1) {
    const int n = std::atoi(argv[1]);
    if (n < 1 || n > 10) {
      std::fprintf(stderr, "usage: %s [criterion 1..10]\n", argv[0]);
      return 2;
    }
    lo = hi = n;
  }
  bool all_pass = true;
  for (int n = lo; n <= hi; ++n) {
    const Criterion& c = kCriteria[n - 1];
    Check result;
    try {
      result = c.run();
    } catch (const std::exception& e) {
      result = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %d (%s): %s - %s\n", n, c.label,
                result.pass ? "PASS" : "FAIL", result.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && result.pass;
  }
  return all_pass ? 0 : 1;
}

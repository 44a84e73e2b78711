#include "cpe/algorithms.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "cpe/cem.hpp"
#include "cpe/combinatorics.hpp"
#include "cpe/errors.hpp"
#include "cpe/estimation.hpp"
#include "cpe/oracles.hpp"
#include "cpe/rng.hpp"

namespace cpe {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void validate_config(const AlgoConfig& cfg, int d) {
  if (!(cfg.epsilon >= 0.0) || !std::isfinite(cfg.epsilon))
    throw ValidationError("epsilon must be finite and >= 0");
  if (!(cfg.delta > 0.0) || !(cfg.delta < 1.0))
    throw ValidationError("delta must lie in (0, 1)");
  if (!(cfg.alpha > 0.0) || !(cfg.alpha <= 1.0))
    throw ValidationError("alpha must lie in (0, 1]");
  if (!(cfg.omega > 0.0)) throw ValidationError("omega must be > 0");
  if (cfg.s_bound < 0.0) throw ValidationError("s_bound must be >= 0");
  if (cfg.max_rounds < d) throw ValidationError("max_rounds must be at least d");
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

SuperArm fallback_output(int d, int k) {
  std::vector<int> members(static_cast<size_t>(k));
  std::iota(members.begin(), members.end(), 0);
  return SuperArm::of(std::move(members), d);
}

// Replace e_out by e_in inside a super arm (used for paired gap pulls).
SuperArm swap_member(const SuperArm& arm, int e_out, int e_in, int d) {
  std::vector<int> members = arm.members;
  members.erase(std::find(members.begin(), members.end(), e_out));
  members.push_back(e_in);
  return SuperArm::of(std::move(members), d);
}

// {e} plus k-1 padding arms. If e already pads, the lowest free index fills
// the remaining slot so the pull set always has exactly k distinct arms.
SuperArm padded_arm(int e, const std::vector<int>& pad, int d, int k) {
  std::vector<int> members;
  members.reserve(static_cast<size_t>(k));
  members.push_back(e);
  for (int p : pad)
    if (p != e) members.push_back(p);
  if (static_cast<int>(members.size()) < k) {
    std::vector<char> used(static_cast<size_t>(d), 0);
    for (int m : members) used[static_cast<size_t>(m)] = 1;
    for (int c = 0; c < d && static_cast<int>(members.size()) < k; ++c)
      if (!used[static_cast<size_t>(c)]) members.push_back(c);
  }
  return SuperArm::of(std::move(members), d);
}

// ---------------------------------------------------------------------------
// Static-allocation runners. Shared skeleton: pull every support arm once in
// order, then track the allocation. The stopping statistic is evaluated after
// every post-initialization pull, so the first check is at t = |support| + 1.

enum class StaticRule { CoordinateBound, QuadraticMax, ExactEnumeration };

RunOutcome run_static(const Environment& env, const Allocation& alloc,
                      const AlgoConfig& cfg, StaticRule rule) {
  const BanditInstance& inst = env.instance();
  const int d = inst.d;
  validate_config(cfg, d);
  const int k = inst.k;
  if (alloc.d != d) throw ValidationError("allocation dimension does not match instance");
  for (const SuperArm& arm : alloc.support)
    if (static_cast<int>(arm.members.size()) != k)
      throw ValidationError("allocation support must consist of size-k super arms");
  if (rule == StaticRule::ExactEnumeration && binomial(d, k) > 1e6)
    throw GuardError("exact stopping rule requires at most 1e6 candidate super arms");

  const auto start = Clock::now();
  Rng rng(cfg.seed);
  LeastSquaresState state(d, inst.super_arm_sigma());
  TrackingSampler tracker(alloc, cfg.validate_tracking);
  const double log_k_subsets = log_binomial(d, k);

  RunOutcome out;
  out.output = fallback_output(d, k);
  out.stopped_by = StopReason::RoundCap;

  const long supp = static_cast<long>(alloc.support.size());
  std::vector<double> theta;
  while (out.samples < cfg.max_rounds) {
    int idx;
    if (out.samples < supp) {
      idx = static_cast<int>(out.samples);
      tracker.record(idx);
    } else {
      idx = tracker.pull_next();
    }
    const SuperArm& arm = alloc.support[static_cast<size_t>(idx)];
    state.update(arm, env.pull(arm, rng));
    ++out.samples;
    if (out.samples <= supp) continue;  // no stopping check until t = supp + 1

    theta = to_std(state.theta_hat());
    const ScoredSelection best = argmax_topk(theta, k);
    out.output = best.arm;

    double c_t = 0.0;
    double z = 0.0;
    bool stop = false;
    double ratio = std::numeric_limits<double>::quiet_NaN();
    switch (rule) {
      case StaticRule::CoordinateBound: {
        c_t = state.independent_radius(cfg.delta);
        const std::vector<double> radii = state.diag_radii();
        const ScoredSelection rival = solve_p1(theta, radii, c_t, best.arm);
        z = rival.value - best.value;
        stop = z < cfg.epsilon;
        break;
      }
      case StaticRule::QuadraticMax: {
        c_t = state.ellipsoid_radius_logk(log_k_subsets, cfg.delta);
        const Eigen::MatrixXd& inv = state.inverse();
        const QMResult qm = quadratic_maximize(inv, k, cfg.alpha);
        z = c_t * std::sqrt(std::max(0.0, qm.value));
        if (cfg.exact_ratio) {
          // Ratio of the monitored statistic to its exact value, i.e. on the
          // sqrt scale of the quadratic form.
          const QPOptimum opt = brute_force_qp(inv, k);
          ratio = opt.value > 0.0
                      ? std::sqrt(std::max(0.0, qm.value) / opt.value)
                      : 1.0;
        }
        const ScoredSelection second = second_best_topk(theta, best.arm);
        const double lcb = best.value - c_t * state.weighted_norm(best.arm);
        stop = lcb >= second.value + z / cfg.alpha - cfg.epsilon;
        break;
      }
      case StaticRule::ExactEnumeration: {
        c_t = state.ellipsoid_radius_logk(log_k_subsets, cfg.delta);
        z = brute_force_cem_gap(state.inverse(), theta, c_t, best.arm);
        stop = z < cfg.epsilon;
        break;
      }
    }
    if (cfg.record_trace)
      out.trace.push_back({out.samples, c_t, z, best.value, ratio, seconds_since(start)});
    if (stop) {
      out.stopped_by = StopReason::ConditionMet;
      break;
    }
  }
  if (out.stopped_by == StopReason::RoundCap && out.samples > 0) {
    // Best-effort output when capped before the first full stopping check.
    try {
      out.output = argmax_topk(to_std(state.theta_hat()), k).arm;
    } catch (const RankDeficiencyError&) {
      // keep the index fallback
    }
  }
  out.wall_time = seconds_since(start);
  return out;
}

// ---------------------------------------------------------------------------
// Adaptive paired-sampling runners with a regularized estimator. Exploration
// pulls come in pairs that isolate one coordinate against a fixed anchor; the
// stopping statistic is checked before each pair.

enum class PairedRule { QuadraticMax, ExactEnumeration };

RunOutcome run_paired_regularized(const Environment& env, const AlgoConfig& cfg,
                                  PairedRule rule) {
  const BanditInstance& inst = env.instance();
  const int d = inst.d;
  validate_config(cfg, d);
  const int k = inst.k;
  const int anchor = d - 1;
  if (rule == PairedRule::ExactEnumeration && binomial(d, k) > 1e6)
    throw GuardError("exact stopping rule requires at most 1e6 candidate super arms");

  const auto start = Clock::now();
  Rng rng(cfg.seed);
  const double s_bound = cfg.s_bound > 0.0 ? cfg.s_bound : std::sqrt(static_cast<double>(d));
  const double r_scale = inst.per_arm_noise_scale();
  RegularizedLSState state(d, k, cfg.omega, s_bound, r_scale);
  const Allocation fallback = uniform_allocation(d, default_support(d, k, rng));
  TrackingSampler tracker(fallback, false);

  std::vector<long> queries(static_cast<size_t>(d), 1);  // selection counts per arm
  RunOutcome out;
  out.output = fallback_output(d, k);
  out.stopped_by = StopReason::RoundCap;

  // One pull of a super arm containing each coordinate.
  for (int e = 0; e < d && out.samples < cfg.max_rounds; ++e) {
    std::vector<int> members(static_cast<size_t>(k));
    for (int n = 0; n < k; ++n) members[static_cast<size_t>(n)] = (e + n) % d;
    const SuperArm arm = SuperArm::of(std::move(members), d);
    state.update(arm, env.pull(arm, rng));
    ++out.samples;
  }

  std::vector<double> theta;
  std::vector<double> radii(static_cast<size_t>(d), 0.0);
  std::vector<double> tilde(static_cast<size_t>(d), 0.0);
  while (true) {
    theta = to_std(state.theta_hat());
    const ScoredSelection best = argmax_topk(theta, k);
    out.output = best.arm;

    const double c_t = state.radius(cfg.delta);
    double z = 0.0;
    bool stop = false;
    double ratio = std::numeric_limits<double>::quiet_NaN();
    if (rule == PairedRule::QuadraticMax) {
      const QMResult qm = quadratic_maximize(state.inverse(), k, cfg.alpha);
      z = c_t * std::sqrt(std::max(0.0, qm.value));
      if (cfg.exact_ratio) {
        const QPOptimum opt = brute_force_qp(state.inverse(), k);
        ratio = opt.value > 0.0
                    ? std::sqrt(std::max(0.0, qm.value) / opt.value)
                    : 1.0;
      }
      const ScoredSelection second = second_best_topk(theta, best.arm);
      const double lcb = best.value - c_t * state.weighted_norm(best.arm);
      stop = lcb >= second.value + z / cfg.alpha - cfg.epsilon;
    } else {
      z = brute_force_cem_gap(state.inverse(), theta, c_t, best.arm);
      stop = z < cfg.epsilon;
    }
    if (cfg.record_trace)
      out.trace.push_back({out.samples, c_t, z, best.value, ratio, seconds_since(start)});
    if (stop) {
      out.stopped_by = StopReason::ConditionMet;
      break;
    }

    // Exploration target: widest per-arm radius over the disagreement set.
    const double t_now = static_cast<double>(out.samples + 2);
    const double log_term =
        std::log(std::max(1.0, 4.0 * d * t_now * t_now * t_now / cfg.delta));
    for (int e = 0; e < d; ++e)
      radii[static_cast<size_t>(e)] =
          e == anchor ? 0.0
                      : r_scale * std::sqrt(2.0 * k * log_term /
                                            static_cast<double>(queries[static_cast<size_t>(e)]));
    for (int e = 0; e < d; ++e)
      tilde[static_cast<size_t>(e)] =
          theta[static_cast<size_t>(e)] +
          (best.arm.contains(e) ? -radii[static_cast<size_t>(e)] : radii[static_cast<size_t>(e)]);
    const ScoredSelection pessimist = argmax_topk(tilde, k);
    int e_t = -1;
    double widest = -1.0;
    for (int e = 0; e < d; ++e) {
      if (e == anchor) continue;
      if (best.arm.contains(e) == pessimist.arm.contains(e)) continue;
      if (radii[static_cast<size_t>(e)] > widest) {
        widest = radii[static_cast<size_t>(e)];
        e_t = e;
      }
    }
    if (e_t < 0) {
      // Disagreement set is empty or anchored: fall back to one tracking pull.
      if (out.samples + 1 > cfg.max_rounds) break;
      const SuperArm& arm = fallback.support[static_cast<size_t>(tracker.pull_next())];
      state.update(arm, env.pull(arm, rng));
      ++out.samples;
      continue;
    }
    if (out.samples + 2 > cfg.max_rounds) break;
    ++queries[static_cast<size_t>(e_t)];
    const SuperArm pull = constrained_superarm(d, k, e_t, anchor, rng);
    const SuperArm paired = swap_member(pull, e_t, anchor, d);
    state.update(pull, env.pull(pull, rng));
    state.update(paired, env.pull(paired, rng));
    out.samples += 2;
  }
  out.wall_time = seconds_since(start);
  return out;
}

}  // namespace

RunOutcome run_icb(const Environment& env, const Allocation& alloc, const AlgoConfig& cfg) {
  return run_static(env, alloc, cfg, StaticRule::CoordinateBound);
}

RunOutcome run_saqm(const Environment& env, const Allocation& alloc, const AlgoConfig& cfg) {
  return run_static(env, alloc, cfg, StaticRule::QuadraticMax);
}

RunOutcome run_sa_ex(const Environment& env, const Allocation& alloc, const AlgoConfig& cfg) {
  return run_static(env, alloc, cfg, StaticRule::ExactEnumeration);
}

RunOutcome run_clucb_qm(const Environment& env, const AlgoConfig& cfg) {
  return run_paired_regularized(env, cfg, PairedRule::QuadraticMax);
}

RunOutcome run_clucb_ex(const Environment& env, const AlgoConfig& cfg) {
  return run_paired_regularized(env, cfg, PairedRule::ExactEnumeration);
}

// ---------------------------------------------------------------------------
// Per-arm gap estimation against a fixed anchor coordinate. Each query of a
// coordinate costs two pulls that differ only in that coordinate versus the
// anchor; their difference is an unbiased draw of theta_e - theta_anchor.

RunOutcome run_clucb(const Environment& env, const AlgoConfig& cfg) {
  const BanditInstance& inst = env.instance();
  const int d = inst.d;
  validate_config(cfg, d);
  const int k = inst.k;
  const int anchor = d - 1;
  const double r_scale = inst.per_arm_noise_scale();

  const auto start = Clock::now();
  Rng rng(cfg.seed);
  std::vector<double> gap_sum(static_cast<size_t>(d), 0.0);
  std::vector<long> gap_n(static_cast<size_t>(d), 0);

  RunOutcome out;
  out.output = fallback_output(d, k);
  out.stopped_by = StopReason::RoundCap;

  auto query_pair = [&](int e) {
    const SuperArm with_e = constrained_superarm(d, k, e, anchor, rng);
    const SuperArm with_anchor = swap_member(with_e, e, anchor, d);
    const double r1 = env.pull(with_e, rng);
    const double r2 = env.pull(with_anchor, rng);
    gap_sum[static_cast<size_t>(e)] += r1 - r2;
    ++gap_n[static_cast<size_t>(e)];
    out.samples += 2;
  };

  for (int e = 0; e < d - 1 && out.samples + 2 <= cfg.max_rounds; ++e) query_pair(e);
  const bool init_done = out.samples == 2 * (d - 1);

  std::vector<double> theta(static_cast<size_t>(d), 0.0);
  std::vector<double> radii(static_cast<size_t>(d), 0.0);
  std::vector<double> tilde(static_cast<size_t>(d), 0.0);
  while (init_done) {
    // The anchor's own gap is identically zero, so its estimate and radius
    // stay pinned at zero; a growing anchor radius could never close.
    const double t_now = static_cast<double>(out.samples + 2);
    const double log_term =
        std::log(std::max(1.0, 4.0 * d * t_now * t_now * t_now / cfg.delta));
    for (int e = 0; e < d; ++e) {
      if (e == anchor) {
        theta[static_cast<size_t>(e)] = 0.0;
        radii[static_cast<size_t>(e)] = 0.0;
      } else {
        theta[static_cast<size_t>(e)] =
            gap_sum[static_cast<size_t>(e)] / static_cast<double>(gap_n[static_cast<size_t>(e)]);
        radii[static_cast<size_t>(e)] =
            r_scale * std::sqrt(2.0 * k * log_term /
                                static_cast<double>(gap_n[static_cast<size_t>(e)]));
      }
    }
    const ScoredSelection best = argmax_topk(theta, k);
    out.output = best.arm;
    for (int e = 0; e < d; ++e)
      tilde[static_cast<size_t>(e)] =
          theta[static_cast<size_t>(e)] +
          (best.arm.contains(e) ? -radii[static_cast<size_t>(e)] : radii[static_cast<size_t>(e)]);
    const ScoredSelection pessimist = argmax_topk(tilde, k);
    double tilde_best = 0.0;
    for (int m : best.arm.members) tilde_best += tilde[static_cast<size_t>(m)];
    const double z = pessimist.value - tilde_best;
    if (cfg.record_trace)
      out.trace.push_back({out.samples, radii[0], z, best.value,
                           std::numeric_limits<double>::quiet_NaN(), seconds_since(start)});
    if (z <= cfg.epsilon) {
      out.stopped_by = StopReason::ConditionMet;
      break;
    }
    if (out.samples + 2 > cfg.max_rounds) break;
    int e_t = -1;
    double widest = -1.0;
    for (int e = 0; e < d; ++e) {
      if (e == anchor) continue;
      if (best.arm.contains(e) == pessimist.arm.contains(e)) continue;
      if (radii[static_cast<size_t>(e)] > widest) {
        widest = radii[static_cast<size_t>(e)];
        e_t = e;
      }
    }
    if (e_t < 0) break;  // unreachable: an empty disagreement set gives z <= 0
    query_pair(e_t);
  }
  out.wall_time = seconds_since(start);
  return out;
}

// ---------------------------------------------------------------------------
// Padded single-arm frameworks: sequential halving and interval racing. Both
// estimate single-arm means through pulls of {e} plus a fixed padding set, so
// padding contributions cancel in comparisons.

long me_phase_pull_count(int k, double eps_l, double delta_l) {
  const double count =
      std::ceil(2.0 * std::sqrt(static_cast<double>(k)) / (eps_l * eps_l) *
                std::log(3.0 * k / delta_l));
  // eps_l = 0 asks for an infinite phase; the round cap is then the only exit.
  if (!(count < 9e18)) return std::numeric_limits<long>::max();
  return std::max(1L, static_cast<long>(count));
}

namespace {

struct PullBudget {
  const Environment& env;
  Rng& rng;
  long& samples;
  long max_rounds;
  bool capped = false;

  double pull(const SuperArm& arm) {
    if (samples >= max_rounds) {
      capped = true;
      return 0.0;
    }
    ++samples;
    return env.pull(arm, rng);
  }
};

// Halving: keep the top max(ceil(|M|/2), k) arms per phase until k remain,
// tightening (eps, delta) by (3/4, 1/2) per phase. Fresh means every phase.
std::vector<int> halving_subroutine(const std::vector<int>& candidates, int k,
                                    double eps, double delta, const std::vector<int>& pad,
                                    int d, PullBudget& budget) {
  std::vector<int> alive = candidates;
  if (static_cast<int>(alive.size()) <= k) return alive;
  double eps_l = eps;
  double delta_l = delta / 2.0;
  std::vector<double> latest(static_cast<size_t>(d),
                             -std::numeric_limits<double>::infinity());
  while (static_cast<int>(alive.size()) > k && !budget.capped) {
    const long pulls = me_phase_pull_count(k, eps_l, delta_l);
    for (int e : alive) {
      const SuperArm arm = padded_arm(e, pad, d, k);
      double sum = 0.0;
      long done = 0;
      for (long i = 0; i < pulls && !budget.capped; ++i) {
        sum += budget.pull(arm);
        ++done;
      }
      if (budget.capped) {
        if (done > 1) latest[static_cast<size_t>(e)] = sum / static_cast<double>(done - 1);
        break;
      }
      latest[static_cast<size_t>(e)] = sum / static_cast<double>(done);
    }
    const size_t keep =
        std::max<size_t>((alive.size() + 1) / 2, static_cast<size_t>(k));
    std::stable_sort(alive.begin(), alive.end(), [&](int a, int b) {
      return latest[static_cast<size_t>(a)] > latest[static_cast<size_t>(b)];
    });
    alive.resize(std::min(keep, alive.size()));
    std::sort(alive.begin(), alive.end());
    eps_l *= 0.75;
    delta_l /= 2.0;
  }
  if (static_cast<int>(alive.size()) > k) {
    std::stable_sort(alive.begin(), alive.end(), [&](int a, int b) {
      return latest[static_cast<size_t>(a)] > latest[static_cast<size_t>(b)];
    });
    alive.resize(static_cast<size_t>(k));
    std::sort(alive.begin(), alive.end());
  }
  return alive;
}

// Interval racing: pull the weakest upper-confidence champion and the
// strongest challenger until their intervals separate within eps.
std::vector<int> racing_subroutine(const std::vector<int>& candidates, int k,
                                   double eps, double delta, const std::vector<int>& pad,
                                   int d, PullBudget& budget) {
  std::vector<int> alive = candidates;
  if (static_cast<int>(alive.size()) <= k) return alive;
  const size_t n = alive.size();
  std::vector<double> sums(n, 0.0);
  std::vector<long> counts(n, 0);
  std::vector<SuperArm> arms;
  arms.reserve(n);
  for (int e : alive) arms.push_back(padded_arm(e, pad, d, k));
  long local = 0;
  for (size_t i = 0; i < n && !budget.capped; ++i) {
    const double r = budget.pull(arms[i]);
    if (!budget.capped) {
      sums[i] += r;
      ++counts[i];
      ++local;
    }
  }

  std::vector<double> theta(n, 0.0);
  std::vector<double> beta(n, 0.0);
  std::vector<int> high;
  while (!budget.capped) {
    const double t_now = static_cast<double>(local + 2);
    for (size_t i = 0; i < n; ++i) {
      theta[i] = sums[i] / static_cast<double>(counts[i]);
      beta[i] = std::sqrt(
          static_cast<double>(k) / (2.0 * static_cast<double>(counts[i])) *
          std::log(std::max(1.0, 5.0 * static_cast<double>(n) * t_now * t_now *
                                     t_now * t_now / (4.0 * delta))));
    }
    const ScoredSelection top = argmax_topk(theta, k);
    high = top.arm.members;  // indices into `alive`
    std::vector<char> in_high(n, 0);
    for (int i : high) in_high[static_cast<size_t>(i)] = 1;
    size_t h_star = static_cast<size_t>(high.front());
    for (int i : high)
      if (theta[static_cast<size_t>(i)] - beta[static_cast<size_t>(i)] <
          theta[h_star] - beta[h_star])
        h_star = static_cast<size_t>(i);
    size_t l_star = n;
    for (size_t i = 0; i < n; ++i) {
      if (in_high[i]) continue;
      if (l_star == n || theta[i] + beta[i] > theta[l_star] + beta[l_star]) l_star = i;
    }
    if ((theta[l_star] + beta[l_star]) - (theta[h_star] - beta[h_star]) < eps) break;
    if (budget.samples + 2 > budget.max_rounds) {
      budget.capped = true;
      break;
    }
    sums[h_star] += budget.pull(arms[h_star]);
    ++counts[h_star];
    sums[l_star] += budget.pull(arms[l_star]);
    ++counts[l_star];
    local += 2;
  }
  if (high.empty()) {
    // Capped during initialization: rank whatever means exist.
    for (size_t i = 0; i < n; ++i)
      theta[i] = counts[i] > 0 ? sums[i] / static_cast<double>(counts[i])
                               : -std::numeric_limits<double>::infinity();
    high = argmax_topk(theta, k).arm.members;
  }
  std::vector<int> result;
  result.reserve(static_cast<size_t>(k));
  for (int i : high) result.push_back(alive[static_cast<size_t>(i)]);
  std::sort(result.begin(), result.end());
  return result;
}

template <typename Subroutine>
RunOutcome run_padded_framework(const Environment& env, const AlgoConfig& cfg,
                                Subroutine subroutine) {
  const BanditInstance& inst = env.instance();
  const int d = inst.d;
  validate_config(cfg, d);
  const int k = inst.k;
  const auto start = Clock::now();
  Rng rng(cfg.seed);

  RunOutcome out;
  out.output = fallback_output(d, k);
  out.stopped_by = StopReason::RoundCap;
  PullBudget budget{env, rng, out.samples, cfg.max_rounds};

  // Random padding set of k-1 arms; the rest form the first candidate pool.
  std::vector<int> order(static_cast<size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  for (int i = 0; i < k - 1; ++i) {
    const size_t j = static_cast<size_t>(i) + static_cast<size_t>(uniform_index(
                                                 rng, static_cast<std::uint64_t>(d - i)));
    std::swap(order[static_cast<size_t>(i)], order[j]);
  }
  std::vector<int> pad_a(order.begin(), order.begin() + (k - 1));
  std::vector<int> pool_b(order.begin() + (k - 1), order.end());
  std::sort(pad_a.begin(), pad_a.end());
  std::sort(pool_b.begin(), pool_b.end());

  const double eps_sub = cfg.epsilon / (2.0 * k);
  const double delta_sub = cfg.delta / 2.0;
  const std::vector<int> b_star =
      subroutine(pool_b, k, eps_sub, delta_sub, pad_a, d, budget);
  if (budget.capped) {
    if (static_cast<int>(b_star.size()) == k) {
      std::vector<int> members = b_star;
      out.output = SuperArm::of(std::move(members), d);
    }
    out.wall_time = seconds_since(start);
    return out;
  }

  // Second stage: race the survivors against the old padding arms, padded by
  // rejected arms. When fewer than k-1 arms were rejected (d < 3k-2) the pad
  // borrows from A; a borrowed arm appears in every pull of the race, so its
  // own reward cancels out and it cannot be ranked: it pads instead of racing.
  std::vector<char> kept(static_cast<size_t>(d), 0);
  for (int e : b_star) kept[static_cast<size_t>(e)] = 1;
  std::vector<int> rejected;
  for (int e : pool_b)
    if (!kept[static_cast<size_t>(e)]) rejected.push_back(e);

  std::vector<int> pad_bad;
  std::vector<int> finalists = b_star;
  if (static_cast<int>(rejected.size()) >= k - 1) {
    for (int i = 0; i < k - 1; ++i) {
      const size_t j =
          static_cast<size_t>(i) +
          static_cast<size_t>(uniform_index(
              rng, static_cast<std::uint64_t>(rejected.size() - static_cast<size_t>(i))));
      std::swap(rejected[static_cast<size_t>(i)], rejected[j]);
    }
    pad_bad.assign(rejected.begin(), rejected.begin() + (k - 1));
    finalists.insert(finalists.end(), pad_a.begin(), pad_a.end());
  } else {
    pad_bad = rejected;
    const int need = k - 1 - static_cast<int>(pad_bad.size());
    for (int i = 0; i < need; ++i) {
      const size_t j =
          static_cast<size_t>(i) +
          static_cast<size_t>(uniform_index(
              rng, static_cast<std::uint64_t>(pad_a.size() - static_cast<size_t>(i))));
      std::swap(pad_a[static_cast<size_t>(i)], pad_a[j]);
    }
    pad_bad.insert(pad_bad.end(), pad_a.begin(), pad_a.begin() + need);
    finalists.insert(finalists.end(), pad_a.begin() + need, pad_a.end());
  }
  std::sort(pad_bad.begin(), pad_bad.end());
  std::sort(finalists.begin(), finalists.end());

  std::vector<int> winners =
      subroutine(finalists, k, eps_sub, delta_sub, pad_bad, d, budget);
  // d < 2k leaves fewer than k finalists; fill the output from the pad.
  for (int e : pad_bad) {
    if (static_cast<int>(winners.size()) >= k) break;
    if (std::find(winners.begin(), winners.end(), e) == winners.end())
      winners.push_back(e);
  }
  if (static_cast<int>(winners.size()) == k) {
    std::sort(winners.begin(), winners.end());
    out.output = SuperArm::of(std::move(winners), d);
  }
  if (!budget.capped) out.stopped_by = StopReason::ConditionMet;
  out.wall_time = seconds_since(start);
  return out;
}

}  // namespace

RunOutcome run_me(const Environment& env, const AlgoConfig& cfg) {
  return run_padded_framework(env, cfg, halving_subroutine);
}

RunOutcome run_lucb(const Environment& env, const AlgoConfig& cfg) {
  return run_padded_framework(env, cfg, racing_subroutine);
}

}  // namespace cpe

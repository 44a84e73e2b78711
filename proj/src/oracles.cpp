#include "cpe/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cpe/combinatorics.hpp"
#include "cpe/errors.hpp"

namespace cpe {

namespace {

// Indices sorted by (score descending, index ascending).
std::vector<int> ranking(const std::vector<double>& scores) {
  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return scores[a] > scores[b]; });
  return order;
}

}  // namespace

ScoredSelection argmax_topk(const std::vector<double>& scores, int k) {
  const int d = static_cast<int>(scores.size());
  if (k < 1 || k > d) throw ValidationError("top-k selection needs 1 <= k <= d");
  const std::vector<int> order = ranking(scores);
  std::vector<int> members(order.begin(), order.begin() + k);
  double value = 0.0;
  for (int e : members) value += scores[e];
  return ScoredSelection{SuperArm::of(std::move(members), d), value};
}

ScoredSelection second_best_topk(const std::vector<double>& scores, const SuperArm& exclude) {
  const int d = static_cast<int>(scores.size());
  const int k = exclude.size();
  if (k >= d) throw ValidationError("second best needs a non-member to swap in");
  const std::vector<int> order = ranking(scores);
  // With exclude = the argmax, its members occupy the top of the ranking; the
  // cheapest swap trades the lowest-ranked member for the highest-ranked
  // non-member.
  int out = -1, in = -1;
  for (int pos = d - 1; pos >= 0; --pos)
    if (exclude.contains(order[pos])) {
      out = order[pos];
      break;
    }
  for (int pos = 0; pos < d; ++pos)
    if (!exclude.contains(order[pos])) {
      in = order[pos];
      break;
    }
  std::vector<int> members;
  members.reserve(k);
  for (int e : exclude.members)
    if (e != out) members.push_back(e);
  members.push_back(in);
  double value = 0.0;
  for (int e : members) value += scores[e];
  return ScoredSelection{SuperArm::of(std::move(members), d), value};
}

ScoredSelection solve_p1(const std::vector<double>& theta_hat, const std::vector<double>& s,
                         double c_t, const SuperArm& mhat) {
  const int d = static_cast<int>(theta_hat.size());
  if (static_cast<int>(s.size()) != d)
    throw ValidationError("radius vector length differs from theta length");
  if (!(c_t >= 0.0)) throw ValidationError("confidence scale must be nonnegative");
  if (mhat.size() >= d) throw ValidationError("no super arm other than mhat exists");
  std::vector<double> adjusted(d);
  double mhat_radius_sum = 0.0;
  for (int i = 0; i < d; ++i) adjusted[i] = theta_hat[i] + c_t * s[i];
  for (int i : mhat.members) {
    adjusted[i] = theta_hat[i] - c_t * s[i];
    mhat_radius_sum += s[i];
  }
  ScoredSelection best = argmax_topk(adjusted, mhat.size());
  if (best.arm == mhat) best = second_best_topk(adjusted, best.arm);
  best.value += c_t * mhat_radius_sum;
  return best;
}

SuperArm constrained_superarm(int d, int k, int include, int exclude, Rng& rng) {
  if (include < 0 || include >= d || exclude < 0 || exclude >= d)
    throw ValidationError("constrained arm indices outside [0, d)");
  if (include == exclude) throw ValidationError("cannot both include and exclude one arm");
  if (k < 1 || k > d - 1) throw ValidationError("constrained arm needs 1 <= k <= d - 1");
  std::vector<int> pool;
  pool.reserve(d - 2);
  for (int e = 0; e < d; ++e)
    if (e != include && e != exclude) pool.push_back(e);
  std::vector<int> members{include};
  for (int j = 0; j < k - 1; ++j) {
    const int pick = j + static_cast<int>(uniform_index(rng, pool.size() - j));
    std::swap(pool[j], pool[pick]);
    members.push_back(pool[j]);
  }
  return SuperArm::of(std::move(members), d);
}

double brute_force_cem_gap(const Eigen::MatrixXd& a_inv, const std::vector<double>& theta_hat,
                           double c_t, const SuperArm& mhat) {
  const int d = static_cast<int>(theta_hat.size());
  const int k = mhat.size();
  if (a_inv.rows() != d || a_inv.cols() != d)
    throw ValidationError("inverse design dimension differs from theta length");
  if (binomial(d, k) > 1e6)
    throw GuardError("subset enumeration refused: C(" + std::to_string(d) + "," +
                     std::to_string(k) + ") exceeds 1e6");
  const Eigen::VectorXd chi_star = mhat.indicator(d);
  const Eigen::VectorXd cross = a_inv * chi_star;  // chi' cross = chi' A^-1 chi_star
  const double q_star = chi_star.dot(cross);
  double mhat_value = 0.0;
  for (int e : mhat.members) mhat_value += theta_hat[e];
  double best = -std::numeric_limits<double>::infinity();
  for_each_subset(d, k, [&](const std::vector<int>& s) {
    if (s == mhat.members) return;
    double value = 0.0, u = 0.0, q = 0.0;
    for (size_t a = 0; a < s.size(); ++a) {
      value += theta_hat[s[a]];
      u += cross[s[a]];
      q += a_inv(s[a], s[a]);
      for (size_t b = 0; b < a; ++b) q += 2.0 * a_inv(s[a], s[b]);
    }
    const double dist2 = std::max(0.0, q - 2.0 * u + q_star);
    best = std::max(best, value + c_t * std::sqrt(dist2));
  });
  return best - mhat_value;
}

}  // namespace cpe

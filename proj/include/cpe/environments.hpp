#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cpe/instance.hpp"
#include "cpe/rng.hpp"

// Reward sources. An environment is immutable after construction and safe to
// share across runs; each run supplies its own rng stream to pull(). Only the
// noisy sum of a super arm's member rewards ever leaves this interface.

namespace cpe {

class Environment {
 public:
  virtual ~Environment() = default;
  virtual const BanditInstance& instance() const = 0;
  virtual double pull(const SuperArm& arm, Rng& rng) const = 0;
};

// Plays a BanditInstance directly: Gaussian noise is a single draw on the sum,
// bounded noise is one uniform [-R, R] draw per member.
class InstanceEnvironment final : public Environment {
 public:
  explicit InstanceEnvironment(BanditInstance instance) : instance_(std::move(instance)) {}
  const BanditInstance& instance() const override { return instance_; }
  double pull(const SuperArm& arm, Rng& rng) const override;

 private:
  BanditInstance instance_;
};

// Synthetic construction: the k best means are uniform on [0,1], the (k+1)-th
// sits exactly delta_min below the weakest of them, the rest are uniform on
// [-1, that value]. Positions are shuffled; the realized best-vs-second-best
// super-arm gap equals delta_min exactly.
struct SyntheticSpec {
  int d = 0;
  int k = 0;
  double delta_min = 0.0;  // in (0, 1]
  double noise_std = 1.0;
  std::uint64_t seed = 0;
};

BanditInstance generate_synthetic(const SyntheticSpec& spec);

// Workers label tasks; a worker's accuracy is the fraction of their labels
// matching the ground truth. Pulling a set of workers returns the number of
// them whose fresh Bernoulli(accuracy) draw comes up correct.
class CrowdEnvironment final : public Environment {
 public:
  CrowdEnvironment(std::vector<double> accuracies, int k);
  const BanditInstance& instance() const override { return instance_; }
  double pull(const SuperArm& arm, Rng& rng) const override;
  const std::vector<double>& accuracies() const { return instance_.theta; }

 private:
  BanditInstance instance_;
};

// Label file: one record per line with fields (task_id, worker_id, given_label,
// true_label), separated by commas, semicolons, tabs, or spaces. An optional
// header is detected by a non-numeric first field. Workers are indexed in
// order of first appearance.
CrowdEnvironment load_crowd_labels(std::istream& in, int k);
CrowdEnvironment load_crowd_labels_file(const std::string& path, int k);

// Emits a label file realizing the given accuracies exactly (worker e answers
// round(acc_e * tasks) of `tasks` tasks correctly). Test and generator plumbing.
std::string make_crowd_labels(const std::vector<double>& accuracies, int tasks);

}  // namespace cpe

#pragma once

#include <Eigen/Core>
#include <compare>
#include <iosfwd>
#include <string>
#include <vector>

#include "cpe/errors.hpp"

// Core problem data for top-k identification with full-bandit feedback.
// A super arm is a size-k subset of the d base arms; pulling it reveals only
// the noisy sum of its members' rewards.

namespace cpe {

struct SuperArm {
  std::vector<int> members;  // strictly increasing base-arm indices

  // Validates range/duplicates and normalizes order.
  static SuperArm of(std::vector<int> members, int d);

  int size() const { return static_cast<int>(members.size()); }
  bool contains(int e) const;

  // chi_M, the 0/1 membership vector in R^d.
  Eigen::VectorXd indicator(int d) const;

  auto operator<=>(const SuperArm&) const = default;
};

enum class NoiseKind { BoundedUniform, Gaussian };

// Per-base-arm noise description. param is the half-width R for bounded noise
// and the standard deviation for Gaussian noise.
struct NoiseModel {
  NoiseKind kind = NoiseKind::BoundedUniform;
  double param = 0.0;
};

struct BanditInstance {
  int d = 0;
  int k = 0;
  std::vector<double> theta;  // expected reward of each base arm
  NoiseModel noise;

  static BanditInstance make(int d, int k, std::vector<double> theta, NoiseModel noise);

  // Sub-Gaussian scale of one base arm's noise (R or sigma).
  double per_arm_noise_scale() const { return noise.param; }
  // Sub-Gaussian scale of a whole super-arm observation: k times the per-arm scale.
  double super_arm_sigma() const { return k * noise.param; }
};

// theta(M) = sum of member means. Rejects arms of the wrong size or range.
double expected_reward(const BanditInstance& instance, const SuperArm& arm);

// Flat text serialization, one field per line: d, k, theta as comma-separated
// decimals, noise kind, noise parameter. Round-trips within 1e-12 relative.
std::string write_instance(const BanditInstance& instance);
BanditInstance read_instance(std::istream& in);
BanditInstance read_instance_string(const std::string& text);

}  // namespace cpe

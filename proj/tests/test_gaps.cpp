#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <vector>

#include "cpe/combinatorics.hpp"
#include "cpe/gaps.hpp"
#include "cpe/rng.hpp"
#include "doctest.h"

using namespace cpe;

namespace {

BanditInstance simple_instance() {
  return BanditInstance::make(3, 1, {1.0, 0.5, 0.0}, NoiseModel{NoiseKind::Gaussian, 1.0});
}

Allocation singleton_alloc(int d) {
  std::vector<SuperArm> supp;
  for (int i = 0; i < d; ++i) supp.push_back(SuperArm::of({i}, d));
  return uniform_allocation(d, std::move(supp));
}

}  // namespace

TEST_CASE("gap metrics on a hand-computed instance") {
  const GapMetrics m = compute_gap_metrics(simple_instance(), singleton_alloc(3), 0.0);
  CHECK(m.delta_min == doctest::Approx(0.5).epsilon(1e-12));
  REQUIRE(m.delta_e.size() == 3);
  CHECK(m.delta_e[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(m.delta_e[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(m.delta_e[2] == doctest::Approx(1.0).epsilon(1e-12));
  // Lambda = I/3, so every singleton norm is 3; rho' takes the two largest weights.
  CHECK(m.rho == doctest::Approx(3.0).epsilon(1e-9));
  CHECK_FALSE(m.rho_is_lower_bound);
  REQUIRE(m.rho_prime.has_value());
  CHECK(*m.rho_prime == doctest::Approx(12.0).epsilon(1e-9));
  CHECK(m.h_eps == doctest::Approx(3.0 / 0.25).epsilon(1e-9));
  REQUIRE(m.h_eps_prime.has_value());
  CHECK(*m.h_eps_prime == doctest::Approx(48.0).epsilon(1e-9));
}

TEST_CASE("eps enters the hardness denominator") {
  const GapMetrics m = compute_gap_metrics(simple_instance(), singleton_alloc(3), 0.5);
  CHECK(m.h_eps == doctest::Approx(3.0 / 1.0).epsilon(1e-9));
  CHECK_THROWS_AS(compute_gap_metrics(simple_instance(), singleton_alloc(3), -0.1),
                  ValidationError);
}

TEST_CASE("tied optima are rejected") {
  const BanditInstance tied =
      BanditInstance::make(3, 1, {1.0, 1.0, 0.0}, NoiseModel{NoiseKind::Gaussian, 1.0});
  CHECK_THROWS_AS(compute_gap_metrics(tied, singleton_alloc(3), 0.0), AmbiguousInstanceError);
}

TEST_CASE("pairwise hardness matches literal pair enumeration") {
  Rng rng(19);
  const int d = 6, k = 2;
  const BanditInstance inst = BanditInstance::make(
      d, k, {0.9, 0.6, 0.4, 0.1, -0.2, -0.5}, NoiseModel{NoiseKind::Gaussian, 1.0});
  std::vector<SuperArm> supp;
  for_each_subset(d, k, [&](const std::vector<int>& m) { supp.push_back(SuperArm::of(m, d)); });
  std::vector<double> weights(supp.size(), 0.0);
  double total = 0.0;
  for (double& w : weights) {
    w = uniform(rng, 0.5, 1.5);
    total += w;
  }
  for (double& w : weights) w /= total;
  const Allocation alloc = Allocation::make(d, supp, weights);
  const GapMetrics m = compute_gap_metrics(inst, alloc, 0.0);

  const Eigen::MatrixXd lambda_inv = design_matrix(alloc).inverse();
  double best_pair = 0.0;
  for (const SuperArm& a : supp)
    for (const SuperArm& b : supp) {
      double sum = 0.0;
      for (int i = 0; i < d; ++i)
        if (a.contains(i) != b.contains(i)) sum += std::sqrt(lambda_inv(i, i));
      best_pair = std::max(best_pair, sum * sum);
    }
  REQUIRE(m.rho_prime.has_value());
  CHECK(*m.rho_prime == doctest::Approx(best_pair).epsilon(1e-9));

  // rho is the exact quadratic-form maximum at this size.
  double best_norm = 0.0;
  for (const SuperArm& a : supp) {
    const Eigen::VectorXd chi = a.indicator(d);
    best_norm = std::max(best_norm, chi.dot(lambda_inv * chi));
  }
  CHECK(m.rho == doctest::Approx(best_norm).epsilon(1e-9));
  CHECK(m.h_eps == doctest::Approx(m.rho / (m.delta_min * m.delta_min)).epsilon(1e-9));
}

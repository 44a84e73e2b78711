#include "cpe/environments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "cpe/errors.hpp"

namespace cpe {

double InstanceEnvironment::pull(const SuperArm& arm, Rng& rng) const {
  const double mean = expected_reward(instance_, arm);
  if (instance_.noise.kind == NoiseKind::Gaussian)
    return mean + instance_.noise.param * standard_normal(rng);
  double noise = 0.0;
  const double r = instance_.noise.param;
  for (int i = 0; i < arm.size(); ++i) noise += uniform(rng, -r, r);
  return mean + noise;
}

BanditInstance generate_synthetic(const SyntheticSpec& spec) {
  if (spec.d < 2 || spec.k < 1 || spec.k >= spec.d)
    throw ValidationError("synthetic spec needs 1 <= k < d");
  if (!(spec.delta_min > 0.0 && spec.delta_min <= 1.0))
    throw ValidationError("synthetic delta_min must lie in (0, 1]");
  if (!(spec.noise_std >= 0.0)) throw ValidationError("noise_std must be nonnegative");
  Rng rng(spec.seed);
  std::vector<double> theta(spec.d);
  for (int attempt = 0; attempt < 100; ++attempt) {
    for (int i = 0; i < spec.k; ++i) theta[i] = uniform01(rng);
    const double weakest_top = *std::min_element(theta.begin(), theta.begin() + spec.k);
    const double runner_up = weakest_top - spec.delta_min;
    theta[spec.k] = runner_up;
    for (int i = spec.k + 1; i < spec.d; ++i) theta[i] = uniform(rng, -1.0, runner_up);
    // Zero-probability ties with the runner-up would blur the realized gap.
    bool clean = true;
    for (int i = spec.k + 1; i < spec.d; ++i)
      if (std::abs(theta[i] - runner_up) < 1e-12) clean = false;
    if (!clean) continue;
    for (int i = spec.d - 1; i > 0; --i) {
      const int j = static_cast<int>(uniform_index(rng, i + 1));
      std::swap(theta[i], theta[j]);
    }
    return BanditInstance::make(spec.d, spec.k, std::move(theta),
                                NoiseModel{NoiseKind::Gaussian, spec.noise_std});
  }
  throw ValidationError("synthetic generation kept drawing degenerate ties");
}

CrowdEnvironment::CrowdEnvironment(std::vector<double> accuracies, int k) {
  for (double a : accuracies)
    if (!(a >= 0.0 && a <= 1.0))
      throw ValidationError("worker accuracy outside [0, 1]");
  const int d = static_cast<int>(accuracies.size());  // size before the move below
  instance_ = BanditInstance::make(d, k, std::move(accuracies),
                                   NoiseModel{NoiseKind::BoundedUniform, 1.0});
}

double CrowdEnvironment::pull(const SuperArm& arm, Rng& rng) const {
  if (arm.size() != instance_.k)
    throw ValidationError("super arm size differs from configured k");
  double correct = 0.0;
  for (int e : arm.members) {
    if (e < 0 || e >= instance_.d) throw ValidationError("invalid worker index");
    if (uniform01(rng) < instance_.theta[e]) correct += 1.0;
  }
  return correct;
}

namespace {

std::vector<std::string> split_record(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char c : line) {
    if (c == ',' || c == ';' || c == '\t' || c == ' ') {
      if (!field.empty()) fields.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  if (!field.empty()) fields.push_back(std::move(field));
  return fields;
}

bool numeric_field(const std::string& s) {
  if (s.empty()) return false;
  char* end = nullptr;
  std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

}  // namespace

CrowdEnvironment load_crowd_labels(std::istream& in, int k) {
  std::string line;
  std::vector<std::string> worker_order;
  std::map<std::string, std::pair<long, long>> tallies;  // worker -> (correct, total)
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::vector<std::string> fields = split_record(line);
    if (fields.empty()) continue;
    if (line_no == 1 && !numeric_field(fields[0])) continue;  // header
    if (fields.size() != 4)
      throw ValidationError("label record on line " + std::to_string(line_no) + " has " +
                            std::to_string(fields.size()) + " fields, expected 4");
    const std::string& worker = fields[1];
    auto [it, inserted] = tallies.try_emplace(worker, 0L, 0L);
    if (inserted) worker_order.push_back(worker);
    it->second.second += 1;
    if (fields[2] == fields[3]) it->second.first += 1;
  }
  if (worker_order.empty()) throw ValidationError("label file contains no records");
  std::vector<double> accuracies;
  accuracies.reserve(worker_order.size());
  for (const std::string& worker : worker_order) {
    const auto& [correct, total] = tallies[worker];
    accuracies.push_back(static_cast<double>(correct) / static_cast<double>(total));
  }
  return CrowdEnvironment(std::move(accuracies), k);
}

CrowdEnvironment load_crowd_labels_file(const std::string& path, int k) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open label file: " + path);
  return load_crowd_labels(in, k);
}

std::string make_crowd_labels(const std::vector<double>& accuracies, int tasks) {
  if (tasks < 1) throw ValidationError("need at least one task");
  std::ostringstream out;
  out << "task_id,worker_id,given_label,true_label\n";
  for (size_t w = 0; w < accuracies.size(); ++w) {
    const long correct = std::lround(accuracies[w] * tasks);
    for (int t = 0; t < tasks; ++t)
      out << t << ',' << w << ',' << (t < correct ? 1 : 0) << ",1\n";
  }
  return out.str();
}

}  // namespace cpe

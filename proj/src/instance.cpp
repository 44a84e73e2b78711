#include "cpe/instance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace cpe {

SuperArm SuperArm::of(std::vector<int> members, int d) {
  std::sort(members.begin(), members.end());
  for (size_t i = 0; i < members.size(); ++i) {
    if (members[i] < 0 || members[i] >= d)
      throw ValidationError("super arm index " + std::to_string(members[i]) +
                            " outside [0, " + std::to_string(d) + ")");
    if (i > 0 && members[i] == members[i - 1])
      throw ValidationError("super arm repeats index " + std::to_string(members[i]));
  }
  return SuperArm{std::move(members)};
}

bool SuperArm::contains(int e) const {
  return std::binary_search(members.begin(), members.end(), e);
}

Eigen::VectorXd SuperArm::indicator(int d) const {
  Eigen::VectorXd chi = Eigen::VectorXd::Zero(d);
  for (int e : members) chi[e] = 1.0;
  return chi;
}

BanditInstance BanditInstance::make(int d, int k, std::vector<double> theta, NoiseModel noise) {
  if (d < 2) throw ValidationError("instance needs d >= 2 base arms");
  if (k < 1 || k >= d) throw ValidationError("instance needs 1 <= k < d");
  if (static_cast<int>(theta.size()) != d)
    throw ValidationError("theta has " + std::to_string(theta.size()) + " entries, expected " +
                          std::to_string(d));
  for (double v : theta)
    if (!std::isfinite(v)) throw ValidationError("theta entries must be finite");
  if (!(noise.param >= 0.0) || !std::isfinite(noise.param))
    throw ValidationError("noise parameter must be finite and nonnegative");
  return BanditInstance{d, k, std::move(theta), noise};
}

double expected_reward(const BanditInstance& instance, const SuperArm& arm) {
  if (arm.size() != instance.k)
    throw ValidationError("super arm has " + std::to_string(arm.size()) + " members, expected " +
                          std::to_string(instance.k));
  double sum = 0.0;
  int prev = -1;
  for (int e : arm.members) {
    if (e < 0 || e >= instance.d || e == prev)
      throw ValidationError("invalid super arm member " + std::to_string(e));
    sum += instance.theta[e];
    prev = e;
  }
  return sum;
}

namespace {

std::string format_decimal(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* noise_name(NoiseKind kind) {
  return kind == NoiseKind::BoundedUniform ? "bounded" : "gaussian";
}

}  // namespace

std::string write_instance(const BanditInstance& instance) {
  std::ostringstream out;
  out << instance.d << '\n' << instance.k << '\n';
  for (int i = 0; i < instance.d; ++i) {
    if (i) out << ',';
    out << format_decimal(instance.theta[i]);
  }
  out << '\n' << noise_name(instance.noise.kind) << '\n'
      << format_decimal(instance.noise.param) << '\n';
  return out.str();
}

BanditInstance read_instance(std::istream& in) {
  std::string line;
  auto next_line = [&](const char* field) {
    if (!std::getline(in, line)) throw ValidationError(std::string("instance record truncated at ") + field);
    return line;
  };
  int d = 0, k = 0;
  try {
    d = std::stoi(next_line("d"));
    k = std::stoi(next_line("k"));
  } catch (const std::exception&) {
    throw ValidationError("instance record has non-numeric d or k");
  }
  next_line("theta");
  std::vector<double> theta;
  std::stringstream fields(line);
  std::string field;
  while (std::getline(fields, field, ',')) {
    try {
      theta.push_back(std::stod(field));
    } catch (const std::exception&) {
      throw ValidationError("instance record has non-numeric theta entry '" + field + "'");
    }
  }
  const std::string kind_name = next_line("noise kind");
  NoiseModel noise;
  if (kind_name == "bounded") noise.kind = NoiseKind::BoundedUniform;
  else if (kind_name == "gaussian") noise.kind = NoiseKind::Gaussian;
  else throw ValidationError("unknown noise kind '" + kind_name + "'");
  try {
    noise.param = std::stod(next_line("noise parameter"));
  } catch (const std::exception&) {
    throw ValidationError("instance record has non-numeric noise parameter");
  }
  return BanditInstance::make(d, k, std::move(theta), noise);
}

BanditInstance read_instance_string(const std::string& text) {
  std::istringstream in(text);
  return read_instance(in);
}

}  // namespace cpe

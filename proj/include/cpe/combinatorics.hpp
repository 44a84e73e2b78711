#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace cpe {

// log C(n, k), safe for any n that fits the lgamma domain.
inline double log_binomial(int n, int k) {
  if (k < 0 || k > n) return -INFINITY;
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// C(n, k) as a double; callers compare against guards, so overflow to inf is fine.
inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::round(std::exp(log_binomial(n, k)));
}

// Visits every size-k subset of {0..n-1} in lexicographic order. The visitor
// receives the subset as a sorted index vector that must not be retained.
template <typename Visitor>
void for_each_subset(int n, int k, Visitor&& visit) {
  if (k < 0 || k > n) return;
  std::vector<int> s(k);
  for (int i = 0; i < k; ++i) s[i] = i;
  for (;;) {
    visit(static_cast<const std::vector<int>&>(s));
    int i = k - 1;
    while (i >= 0 && s[i] == n - k + i) --i;
    if (i < 0) return;
    ++s[i];
    for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
  }
}

}  // namespace cpe

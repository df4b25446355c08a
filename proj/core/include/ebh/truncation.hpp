#pragma once

#include <vector>

namespace ebh {

// T(x): largest value in {K/k : k = 1..K} ∪ {0} that is <= x.
// Equals K/ceil(K/x) for x >= 1, 0 for x < 1, and K at x = +inf.
// Throws on negative or NaN x, or K < 1.
double truncate(double x, int k);

struct TruncationDomain {
  int k;

  explicit TruncationDomain(int k_);

  // {K/1, K/2, ..., K/K} descending, then the extra 0.
  std::vector<double> values() const;
};

}  // namespace ebh

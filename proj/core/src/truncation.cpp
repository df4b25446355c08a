#include "ebh/truncation.hpp"

#include <cmath>
#include <stdexcept>

namespace ebh {

double truncate(double x, int k) {
  if (k < 1) throw std::invalid_argument("truncate: K must be >= 1");
  if (std::isnan(x)) throw std::invalid_argument("truncate: NaN input");
  if (x < 0.0) throw std::invalid_argument("truncate: input must be >= 0");
  if (x < 1.0) return 0.0;
  const double kd = static_cast<double>(k);
  if (std::isinf(x) || x >= kd) return kd;
  double r = kd / x;
  // Snap r to a nearby integer before ceil: kd/x can land a few ulp above an exact
  // ratio, which would otherwise break idempotence on the grid itself.
  double nearest = std::round(r);
  double j = (std::fabs(r - nearest) <= 1e-9 * r) ? nearest : std::ceil(r);
  if (j < 1.0) j = 1.0;
  if (j > kd) j = kd;
  return kd / j;
}

TruncationDomain::TruncationDomain(int k_) : k(k_) {
  if (k < 1) throw std::invalid_argument("TruncationDomain: K must be >= 1");
}

std::vector<double> TruncationDomain::values() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(k) + 1);
  for (int j = 1; j <= k; ++j) out.push_back(static_cast<double>(k) / j);
  out.push_back(0.0);
  return out;
}

}  // namespace ebh

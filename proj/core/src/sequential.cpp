#include "ebh/sequential.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ebh {

namespace {
void check_nonnegative(std::span<const double> x) {
  for (double v : x) {
    if (std::isnan(v) || v < 0.0) {
      throw std::invalid_argument("e-process inputs must be nonnegative");
    }
  }
}
}  // namespace

double product_e_process(std::span<const double> x) {
  check_nonnegative(x);
  double e = 1.0;
  for (double v : x) e *= v;
  return e;
}

double ville_p_process(std::span<const double> x) {
  check_nonnegative(x);
  double e = 1.0;
  double peak = 1.0;
  for (double v : x) {
    e *= v;
    peak = std::max(peak, e);
  }
  return std::clamp(1.0 / peak, 0.0, 1.0);
}

double eb_e_process(std::span<const double> x, double lambda) {
  check_nonnegative(x);
  if (!(lambda >= 0.0) || !(lambda < 1.0)) {
    throw std::invalid_argument("eb_e_process: lambda must lie in [0, 1)");
  }
  const double psi = -lambda - std::log1p(-lambda);
  double log_e = 0.0;
  for (double v : x) {
    const double d = v - 1.0;
    log_e += lambda * d - psi * d * d;
  }
  return std::exp(log_e);
}

}  // namespace ebh

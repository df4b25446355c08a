#include "ebh/transform.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace ebh {

TransformSpec TransformSpec::linear_e(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::invalid_argument("TransformSpec::linear_e: alpha must lie in (0,1)");
  TransformSpec t;
  t.family_ = Family::LinearE;
  t.alpha_ = alpha;
  return t;
}

TransformSpec TransformSpec::reciprocal_p(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::invalid_argument("TransformSpec::reciprocal_p: alpha must lie in (0,1)");
  TransformSpec t;
  t.family_ = Family::ReciprocalP;
  t.alpha_ = alpha;
  return t;
}

TransformSpec TransformSpec::power_p(double theta, double lambda) {
  if (!(theta > 0.0)) throw std::invalid_argument("TransformSpec::power_p: theta must be > 0");
  if (!(lambda > 0.0) || !(lambda < 1.0))
    throw std::invalid_argument("TransformSpec::power_p: lambda must lie in (0,1)");
  TransformSpec t;
  t.family_ = Family::PowerP;
  t.theta_ = theta;
  t.lambda_ = lambda;
  return t;
}

TransformSpec TransformSpec::level_table(std::vector<double> levels) {
  if (levels.empty()) throw std::invalid_argument("TransformSpec::level_table: empty table");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    double v = levels[i];
    if (std::isnan(v) || v < 0.0 || v > 1.0)
      throw std::invalid_argument("TransformSpec::level_table: levels must lie in [0,1]");
    if (i > 0 && v < levels[i - 1])
      throw std::invalid_argument("TransformSpec::level_table: levels must be nondecreasing");
  }
  TransformSpec t;
  t.family_ = Family::LevelTable;
  t.levels_ = std::move(levels);
  return t;
}

std::vector<double> TransformSpec::step_up_levels(int k) const {
  if (k < 1) throw std::invalid_argument("step_up_levels: K must be >= 1");
  std::vector<double> out(static_cast<std::size_t>(k));
  switch (family_) {
    case Family::ReciprocalP:
      for (int i = 1; i <= k; ++i) out[i - 1] = alpha_ * i / k;
      break;
    case Family::PowerP: {
      // psi^{-1}(t) = (theta*lambda/t)^(1/(1-lambda)) at t = K/k.
      const double ex = 1.0 / (1.0 - lambda_);
      for (int i = 1; i <= k; ++i)
        out[i - 1] = std::min(1.0, std::pow(theta_ * lambda_ * i / k, ex));
      break;
    }
    case Family::LevelTable:
      if (static_cast<int>(levels_.size()) != k)
        throw std::invalid_argument("step_up_levels: level table size differs from K");
      return levels_;
    case Family::LinearE:
      throw std::invalid_argument("step_up_levels: e-side transform has no p-side levels");
  }
  return out;
}

std::vector<double> TransformSpec::e_thresholds(int k) const {
  if (k < 1) throw std::invalid_argument("e_thresholds: K must be >= 1");
  if (family_ != Family::LinearE)
    throw std::invalid_argument("e_thresholds: only the linear e-side transform is built in");
  std::vector<double> out(static_cast<std::size_t>(k));
  for (int i = 1; i <= k; ++i) out[i - 1] = static_cast<double>(k) / (i * alpha_);
  return out;
}

double TransformSpec::psi(double p) const {
  if (std::isnan(p) || p < 0.0 || p > 1.0)
    throw std::invalid_argument("TransformSpec::psi: p must lie in [0,1]");
  switch (family_) {
    case Family::ReciprocalP:
      if (p == 0.0) return std::numeric_limits<double>::infinity();
      return alpha_ / p;
    case Family::PowerP:
      if (p == 0.0) return std::numeric_limits<double>::infinity();
      return theta_ * lambda_ * std::pow(p, lambda_ - 1.0);
    case Family::LevelTable: {
      const int k = static_cast<int>(levels_.size());
      for (int i = 0; i < k; ++i)
        if (p <= levels_[static_cast<std::size_t>(i)]) return static_cast<double>(k) / (i + 1);
      return 0.0;
    }
    case Family::LinearE:
      throw std::invalid_argument("TransformSpec::psi: e-side transform cannot evaluate p");
  }
  return 0.0;
}

}  // namespace ebh

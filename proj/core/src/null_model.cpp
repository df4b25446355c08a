#include "ebh/null_model.hpp"

#include "ebh/math.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ebh {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

NullModel NullModel::calibrator_null(double lambda) {
  if (!(lambda > 0.0) || !(lambda < 1.0)) {
    throw std::invalid_argument("calibrator_null: lambda must lie in (0, 1)");
  }
  NullModel m;
  m.family_ = Family::CalibratorNull;
  m.lambda_ = lambda;
  return m;
}

NullModel NullModel::lognormal_lr(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("lognormal_lr: delta must be positive and finite");
  }
  NullModel m;
  m.family_ = Family::LogNormalLR;
  m.delta_ = delta;
  return m;
}

NullModel NullModel::empirical(std::vector<double> samples) {
  if (samples.empty()) {
    throw std::invalid_argument("empirical: need at least one sample");
  }
  for (double s : samples) {
    if (!std::isfinite(s) || s < 0.0) {
      throw std::invalid_argument("empirical: samples must be finite and nonnegative");
    }
  }
  NullModel m;
  m.family_ = Family::Empirical;
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  m.suffix_sums_.assign(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    m.suffix_sums_[i] = m.suffix_sums_[i + 1] + samples[i];
  }
  const double mean = m.suffix_sums_[0] / static_cast<double>(n);
  double ss = 0.0;
  for (double s : samples) ss += (s - mean) * (s - mean);
  m.sample_sd_ = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
  m.samples_ = std::move(samples);
  return m;
}

double NullModel::survival(double x) const {
  if (std::isnan(x)) throw std::invalid_argument("survival: NaN argument");
  if (x <= 0.0) return 1.0;
  switch (family_) {
    case Family::CalibratorNull:
      // E = lambda*P^(lambda-1) >= x  <=>  P <= (lambda/x)^(1/(1-lambda)).
      if (x <= lambda_) return 1.0;
      return std::pow(lambda_ / x, 1.0 / (1.0 - lambda_));
    case Family::LogNormalLR:
      if (x == kInf) return 0.0;
      return norm_cdf(-(std::log(x) / delta_ + delta_ / 2.0));
    case Family::Empirical: {
      const auto it = std::lower_bound(samples_.begin(), samples_.end(), x);
      return static_cast<double>(samples_.end() - it) / static_cast<double>(samples_.size());
    }
  }
  return 0.0;
}

double NullModel::tail_mean(double x) const {
  if (std::isnan(x)) throw std::invalid_argument("tail_mean: NaN argument");
  switch (family_) {
    case Family::CalibratorNull:
      // integral of lambda*p^(lambda-1) over p <= (lambda/x)^(1/(1-lambda)).
      if (x <= lambda_) return 1.0;
      if (x == kInf) return 0.0;
      return std::pow(lambda_ / x, lambda_ / (1.0 - lambda_));
    case Family::LogNormalLR:
      if (x <= 0.0) return 1.0;
      if (x == kInf) return 0.0;
      // Partial mean of a unit-mean lognormal: shift the tail cutoff by delta.
      return norm_cdf(-(std::log(x) / delta_ - delta_ / 2.0));
    case Family::Empirical: {
      const auto it = std::lower_bound(samples_.begin(), samples_.end(), x);
      const std::size_t idx = static_cast<std::size_t>(it - samples_.begin());
      return suffix_sums_[idx] / static_cast<double>(samples_.size());
    }
  }
  return 0.0;
}

double NullModel::quantile(double q) const {
  if (!(q >= 0.0) || !(q <= 1.0)) {
    throw std::invalid_argument("quantile: q must lie in [0, 1]");
  }
  switch (family_) {
    case Family::CalibratorNull:
      // P(E <= t) = 1 - (lambda/t)^(1/(1-lambda)) for t >= lambda.
      return lambda_ * std::pow(1.0 - q, lambda_ - 1.0);
    case Family::LogNormalLR:
      if (q == 0.0) return 0.0;
      if (q == 1.0) return kInf;
      return std::exp(delta_ * norm_quantile(q) - delta_ * delta_ / 2.0);
    case Family::Empirical: {
      const std::size_t n = samples_.size();
      if (q == 0.0) return samples_.front();
      const double r = std::ceil(q * static_cast<double>(n));
      const std::size_t idx = std::min(n, static_cast<std::size_t>(r)) - 1;
      return samples_[idx];
    }
  }
  return 0.0;
}

double NullModel::mean() const {
  if (family_ == Family::Empirical) {
    return suffix_sums_[0] / static_cast<double>(samples_.size());
  }
  return 1.0;
}

double NullModel::support_max() const {
  return family_ == Family::Empirical ? samples_.back() : kInf;
}

double NullModel::sample(Rng& rng) const {
  switch (family_) {
    case Family::CalibratorNull:
      return lambda_ * std::pow(rng.uniform_pos(), lambda_ - 1.0);
    case Family::LogNormalLR:
      return std::exp(delta_ * rng.normal() - delta_ * delta_ / 2.0);
    case Family::Empirical: {
      const std::size_t n = samples_.size();
      std::size_t idx = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
      if (idx >= n) idx = n - 1;
      return samples_[idx];
    }
  }
  return 0.0;
}

bool NullModel::mean_warning() const {
  if (family_ != Family::Empirical) return false;
  const std::size_t n = samples_.size();
  const double se = n > 1 ? sample_sd_ / std::sqrt(static_cast<double>(n)) : 0.0;
  return mean() > 1.0 + 3.0 * se + (n > 1 ? 0.0 : 1e-12);
}

}  // namespace ebh

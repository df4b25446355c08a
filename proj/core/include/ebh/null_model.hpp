#pragma once

#include "ebh/rng.hpp"

#include <vector>

namespace ebh {

// Null distribution of an e-value, used to compute boosting factors. Three
// families:
//   CalibratorNull(lambda):  E = lambda * P^(lambda-1) with P uniform on (0,1)
//   LogNormalLR(delta):      E = exp(delta*Z - delta^2/2) with Z standard normal
//   Empirical(samples):      the discrete law of a fixed sample set
// The parametric families have closed-form survival / partial-mean / quantile
// functions and unit mean; the empirical family answers every query from the
// sorted sample in O(log n) using precomputed suffix sums.
class NullModel {
 public:
  enum class Family { CalibratorNull, LogNormalLR, Empirical };

  static NullModel calibrator_null(double lambda);
  static NullModel lognormal_lr(double delta);
  // Samples must be finite, nonnegative, nonempty. Construction succeeds even
  // when the sample mean is implausibly high for a null; see mean_warning().
  static NullModel empirical(std::vector<double> samples);

  Family family() const { return family_; }
  double lambda() const { return lambda_; }
  double delta() const { return delta_; }
  // Sorted ascending (Empirical only).
  const std::vector<double>& samples() const { return samples_; }

  // P(E >= x). Defined for all real x (1 for x <= 0).
  double survival(double x) const;
  // E[E * 1{E >= x}].
  double tail_mean(double x) const;
  // Left q-quantile inf{t : P(E <= t) >= q}, q in [0,1]; may be 0 or +inf.
  double quantile(double q) const;
  double mean() const;
  // +inf for the parametric families, max sample for Empirical.
  double support_max() const;
  double sample(Rng& rng) const;

  // True when the sample mean exceeds 1 by more than three standard errors,
  // which makes the set implausible as draws from a null e-value distribution.
  // Always false for the parametric families (their mean is exactly 1).
  bool mean_warning() const;

 private:
  NullModel() = default;

  Family family_ = Family::CalibratorNull;
  double lambda_ = 0.0;
  double delta_ = 0.0;
  std::vector<double> samples_;       // sorted ascending
  std::vector<double> suffix_sums_;   // suffix_sums_[i] = sum of samples_[i..]
  double sample_sd_ = 0.0;
};

}  // namespace ebh

#pragma once

#include <vector>

namespace ebh {

// Monotone transform powering the generalized e-test (increasing phi applied to
// e-values) and the generalized step-up (decreasing psi applied to p-values).
// Only the K values phi^{-1}(K/k) / psi^{-1}(K/k) affect any decision, so general
// transforms are accepted as level tables; closed forms are convenience factories.
class TransformSpec {
 public:
  enum class Family { LinearE, ReciprocalP, PowerP, LevelTable };

  // phi: t -> alpha*t (e-side; recovers the base e-value procedure).
  static TransformSpec linear_e(double alpha);
  // psi: p -> alpha/p (p-side; recovers BH).
  static TransformSpec reciprocal_p(double alpha);
  // psi: p -> theta*lambda*p^(lambda-1), lambda in (0,1), theta > 0.
  static TransformSpec power_p(double theta, double lambda);
  // Explicit step-up levels alpha_k = psi^{-1}(K/k), nondecreasing, each in [0,1].
  static TransformSpec level_table(std::vector<double> levels);

  Family family() const { return family_; }
  double alpha() const { return alpha_; }
  double theta() const { return theta_; }
  double lambda() const { return lambda_; }

  // Step-up levels alpha_k = psi^{-1}(K/k) for k = 1..K (p-side families only).
  std::vector<double> step_up_levels(int k) const;

  // Rejection thresholds phi^{-1}(K/k) for k = 1..K (e-side families only).
  std::vector<double> e_thresholds(int k) const;

  // psi(p) for the p-side families; a level table evaluates as the step function
  // K/min{k : p <= alpha_k} (0 when p clears no level), which preserves every
  // comparison psi(p) >= K/k the procedures consume.
  double psi(double p) const;

 private:
  TransformSpec() = default;

  Family family_ = Family::ReciprocalP;
  double alpha_ = 0.0;
  double theta_ = 0.0;
  double lambda_ = 0.0;
  std::vector<double> levels_;
};

}  // namespace ebh

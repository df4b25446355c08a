#pragma once

#include "ebh/evidence.hpp"

#include <vector>

namespace ebh {

// Decreasing f: [0,1] -> [0,+inf] converting a p-value into an e-value.
// Valid calibrators integrate to at most 1 over [0,1]; construction runs a
// 1e5-point midpoint quadrature (in log space, to handle the singularity at 0)
// and rejects when the integral exceeds 1 + 1e-6.
class Calibrator {
 public:
  enum class Family { Power, Table };

  // f(p) = lambda * p^(lambda-1), lambda in (0,1). f(0) = +inf, integral exactly 1.
  static Calibrator power(double lambda);

  // Piecewise-linear decreasing tabulation on knots 0 < p_1 < ... < p_n <= 1;
  // f is constant at f_1 on (0, p_1] and 0 beyond p_n when p_n < 1.
  static Calibrator table(std::vector<double> p, std::vector<double> f);

  Family family() const { return family_; }
  double lambda() const { return lambda_; }

  double operator()(double p) const;

  // Midpoint-quadrature estimate of the integral over [0,1].
  double integral() const;

 private:
  Calibrator() = default;

  Family family_ = Family::Power;
  double lambda_ = 0.5;
  std::vector<double> knots_p_, knots_f_;
};

// p = min(1, 1/e); e=0 -> 1, e=+inf -> 0.
double e_to_p(double e);
EvidenceVector e_to_p(const EvidenceVector& e);

// e_k = f(p_k); f(0) = +inf propagates as an infinite e-value.
EvidenceVector calibrate_p_to_e(const EvidenceVector& p, const Calibrator& f);

}  // namespace ebh

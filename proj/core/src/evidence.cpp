#include "ebh/evidence.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace ebh {

EvidenceVector::EvidenceVector(std::vector<double> values, EvidenceKind kind)
    : values_(std::move(values)), kind_(kind) {
  if (values_.empty()) throw std::invalid_argument("EvidenceVector: need at least one entry");
  for (double v : values_) {
    if (std::isnan(v)) throw std::invalid_argument("EvidenceVector: NaN entry rejected");
    if (kind_ == EvidenceKind::EValues) {
      if (v < 0.0) throw std::invalid_argument("EvidenceVector: e-values must be >= 0");
    } else {
      if (v < 0.0 || v > 1.0)
        throw std::invalid_argument("EvidenceVector: p-values must lie in [0,1]");
    }
  }
}

EvidenceVector EvidenceVector::e_values(std::vector<double> values) {
  return EvidenceVector(std::move(values), EvidenceKind::EValues);
}

EvidenceVector EvidenceVector::p_values(std::vector<double> values) {
  return EvidenceVector(std::move(values), EvidenceKind::PValues);
}

Weights::Weights(std::vector<double> w) : w_(std::move(w)) {
  if (w_.empty()) throw std::invalid_argument("Weights: need at least one entry");
  double sum = 0.0;
  for (double v : w_) {
    if (std::isnan(v)) throw std::invalid_argument("Weights: NaN entry rejected");
    if (v < 0.0) throw std::invalid_argument("Weights: entries must be >= 0");
    if (std::isinf(v)) throw std::invalid_argument("Weights: entries must be finite");
    sum += v;
  }
  const double k = static_cast<double>(w_.size());
  if (std::fabs(sum - k) > 1e-9 * k)
    throw std::invalid_argument("Weights: entries must sum to K (relative tolerance 1e-9)");
}

}  // namespace ebh

#pragma once

#include <vector>

namespace ebh {

enum class EvidenceKind { EValues, PValues };

// K nonnegative e-values (+inf allowed) or K p-values in [0,1], tagged by kind.
// NaN is rejected at construction. Immutable after construction.
class EvidenceVector {
 public:
  EvidenceVector(std::vector<double> values, EvidenceKind kind);

  static EvidenceVector e_values(std::vector<double> values);
  static EvidenceVector p_values(std::vector<double> values);

  int size() const { return static_cast<int>(values_.size()); }
  EvidenceKind kind() const { return kind_; }
  const std::vector<double>& values() const { return values_; }
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }

 private:
  std::vector<double> values_;
  EvidenceKind kind_;
};

// K nonnegative weights summing to K within relative tolerance 1e-9.
class Weights {
 public:
  explicit Weights(std::vector<double> w);

  int size() const { return static_cast<int>(w_.size()); }
  const std::vector<double>& values() const { return w_; }
  double operator[](int i) const { return w_[static_cast<std::size_t>(i)]; }

 private:
  std::vector<double> w_;
};

}  // namespace ebh

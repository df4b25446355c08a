#pragma once

#include "ebh/evidence.hpp"
#include "ebh/transform.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace ebh {

// Result of a rejection procedure. Indices are 1-based hypothesis positions.
// threshold is the e-value rejection cutoff for e-side procedures (+inf when
// nothing is rejected) and the largest rejected p-value for p-side procedures
// (0 when nothing is rejected). For restricted procedures (structured,
// post-selection, weighted) the threshold applies on the transformed/admissible
// scale; see each function.
struct TestOutcome {
  std::vector<int> rejected;  // ascending 1-based indices
  int k_star = 0;
  double threshold = 0.0;
  double alpha = 0.0;
  std::string procedure;

  bool contains(int k) const;
};

// Base e-value step-up: k* = max{k : k*e_[k]/K >= 1/alpha}, rejecting
// {k : e_k >= K/(alpha k*)}. Ties are handled by the threshold itself, so equal
// values are rejected together. threshold*k_star = K/alpha when k_star >= 1.
TestOutcome e_bh(const EvidenceVector& e, double alpha);

// p-value step-up at levels alpha*k/K: k* = max{k : K*p_(k)/k <= alpha}.
TestOutcome bh(const EvidenceVector& p, double alpha);

// bh at the deflated level alpha/l_K.
TestOutcome by(const EvidenceVector& p, double alpha);

// alpha' solving alpha'*(1 + log(1/alpha')) = alpha; bisection on [1e-12, alpha]
// to absolute tolerance 1e-10.
double cbh_level(double alpha);

// bh at cbh_level(alpha).
TestOutcome cbh(const EvidenceVector& p, double alpha);

// Generalized p-value step-up at levels alpha_k = psi^{-1}(K/k).
TestOutcome step_up(const EvidenceVector& p, const TransformSpec& psi);

// y_psi = alpha_K + sum_{j=1..K-1} K/(j(j+1)) * alpha_j.
double y_psi_from_levels(std::span<const double> levels);

// z_psi = max_k (K/k) * alpha_k.
double z_psi_from_levels(std::span<const double> levels);

// Generalized e-test: k* = max{k : e_[k] >= phi^{-1}(K/k)} with thresholds given
// as the (nonincreasing in k) tabulation phi^{-1}(K/k), k = 1..K.
TestOutcome e_test_phi(const EvidenceVector& e, std::span<const double> phi_inverse);
TestOutcome e_test_phi(const EvidenceVector& e, const TransformSpec& phi);

// e_bh on w_k * e_k. A zero weight drops its hypothesis (0 * inf := 0).
TestOutcome weighted_e_bh(const EvidenceVector& e, const Weights& w, double alpha);

// Every rejected e_k >= K/(alpha * |rejected|); vacuously true when empty.
bool is_self_consistent(const EvidenceVector& e, const std::vector<int>& rejected, double alpha);

// Constraint family for structured rejection sets. member() receives an
// ascending 1-based subset; expansions() proposes elements to try adding
// (candidates failing member() are skipped).
struct StructureOracle {
  std::function<bool(const std::vector<int>&)> member;
  std::function<std::vector<int>(const std::vector<int>&, int)> expansions;

  static StructureOracle all_subsets();
  // Contiguous index runs {a, a+1, ..., b}.
  static StructureOracle contiguous_runs();
  static StructureOracle empty_only();
};

// Greedy search for a large S in the structure with every e-value in S at least
// K/(alpha |S|): seeds in descending-e order, single-element expansions, best
// admissible set kept. Guarantees self-consistency, not maximality.
TestOutcome structured_e_bh(const EvidenceVector& e, double alpha, const StructureOracle& oracle);

// e_bh on the selected subvector at the amended level alpha*|S|/K, with indices
// mapped back to the full problem.
TestOutcome post_selection_e_bh(const EvidenceVector& e, const std::vector<int>& selected,
                                double alpha);

// Per-hypothesis decreasing transforms: r_k = psi_k(p_k), rejecting the k* largest
// r-values where k* = max{k : r_[k] >= K/k}. Rejection is by largest r, not
// smallest p.
TestOutcome multi_transform_test(const EvidenceVector& p, const std::vector<TransformSpec>& psis);

}  // namespace ebh

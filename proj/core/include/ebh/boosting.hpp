#pragma once

#include "ebh/evidence.hpp"
#include "ebh/null_model.hpp"

#include <optional>

namespace ebh {

enum class Dependence { Arbitrary, Prds };
enum class BoostMode { Exact, Conservative };

enum class BoostCriterion { AdExact, AdConservative, PrdsExact, PrdsConservative };

struct BoostResult {
  double b = 1.0;
  BoostCriterion criterion = BoostCriterion::AdExact;
  double achieved_value = 0.0;  // criterion evaluated at b
  // criterion(1) already exceeded alpha (implausible null), so b stayed at 1.
  bool at_floor = false;
  // criterion never reached alpha within the expanded bracket (degenerate
  // model, e.g. all-zero samples); b is the capped bracket end.
  bool capped = false;
};

// Criterion used to boost under arbitrary dependence, upper bound flavor:
// E[alpha*b*E * 1{alpha*b*E >= 1}]. Closed form for the parametric models,
// exact suffix average for Empirical.
double y_bar(const NullModel& model, double alpha, double b);

// Exact arbitrary-dependence criterion E[T(alpha*b*E)] where T truncates down
// to {K/k} ∪ {0}. Computed as survival sums over the K truncation cells:
// S(1/(alpha b)) + sum_{j<K} K/(j(j+1)) * S(K/(j alpha b)), exact for all
// three model families.
double y_exact(const NullModel& model, double alpha, double b, int k);

// Exact PRDS criterion max_{k' <= K} (K/k') * P(alpha*b*E >= K/k').
double z_exact(const NullModel& model, double alpha, double b, int k);

// K-free PRDS bound sup_{x >= 1} x * P(alpha*b*E >= x). CalibratorNull uses a
// log-grid plus ternary refinement (the closed-form supremum sits at x = 1);
// LogNormalLR solves the stationarity condition delta*S(u) = phi(u) once;
// Empirical scans the sample atoms, where the supremum must lie.
double z_bar(const NullModel& model, double alpha, double b);

// Largest b >= 1 with criterion(b) <= alpha, by bisection to relative
// tolerance 1e-9. Exact modes need k; conservative modes ignore it.
BoostResult boost_factor(const NullModel& model, double alpha, std::optional<int> k,
                         Dependence dependence, BoostMode mode);

// Quantile rule b = 1/(alpha * q_{1-alpha}(E)), valid only when
// check_condition_11 passes; throws std::domain_error otherwise (callers fall
// back to boost_factor). Clamped below at 1.
double boost_factor_quantile(const NullModel& model, double alpha);

// Checks that t * P(E >= t) is maximized at the left endpoint of
// [q_{1-alpha}(E), t_max] over a 10^4-point log grid, within a small relative
// slack (widened by sampling error for Empirical). This left-endpoint form is
// what the quantile rule needs, and unlike a pointwise monotonicity scan it is
// robust to the step noise of empirical survival functions.
bool check_condition_11(const NullModel& model, double alpha);

// Componentwise b_k * e_k; every factor must be >= 1.
EvidenceVector apply_boost(const EvidenceVector& e, const std::vector<double>& factors);

}  // namespace ebh

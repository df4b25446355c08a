#include "ebh/boosting.hpp"

#include "ebh/math.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ebh {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }
}

void check_b(double b) {
  if (!(b >= 1.0) || !std::isfinite(b)) {
    throw std::invalid_argument("boost factor must be finite and >= 1");
  }
}

void check_k(int k) {
  if (k < 1) throw std::invalid_argument("K must be >= 1");
}

// sup_{x >= 1} x * S(x/(ab)) over a log grid with local ternary refinement.
double z_bar_grid(const NullModel& model, double ab) {
  const double hi_quantile = model.quantile(1.0 - 1e-9);
  const double x_hi = std::max(1e6, std::isfinite(hi_quantile) ? ab * hi_quantile : 1e6);
  const auto value = [&](double x) { return x * model.survival(x / ab); };

  const std::vector<double> grid = log_spaced(1.0, x_hi, 10000);
  std::size_t best = 0;
  double best_val = -1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = value(grid[i]);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  double lo = std::log(grid[best == 0 ? 0 : best - 1]);
  double hi = std::log(grid[std::min(best + 1, grid.size() - 1)]);
  for (int iter = 0; iter < 200; ++iter) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (value(std::exp(m1)) < value(std::exp(m2))) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  return std::max(best_val, value(std::exp(0.5 * (lo + hi))));
}

// For lognormal E the objective x*P(ab*E >= x) rewritten in u = normal tail
// coordinate is ab*exp(delta*u - delta^2/2)*S_N(u), stationary where
// delta*S_N(u) = phi(u). The root is unique (the normal hazard is increasing),
// so the supremum is there unless the corresponding x falls below 1.
double z_bar_lognormal(const NullModel& model, double ab) {
  const double delta = model.delta();
  const auto g = [&](double u) { return delta * norm_cdf(-u) - norm_pdf(u); };
  double lo = -40.0, hi = 40.0;  // g(lo) > 0 > g(hi)
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  const double u = 0.5 * (lo + hi);
  const double x_star = ab * std::exp(delta * u - delta * delta / 2.0);
  if (x_star >= 1.0) return x_star * norm_cdf(-u);
  return model.survival(1.0 / ab);  // supremum pinned at x = 1
}

double z_bar_empirical(const NullModel& model, double ab) {
  // x*S(x/(ab)) increases linearly in x while the empirical survival is flat,
  // so the supremum over x >= 1 sits at an atom: max over samples s >= 1/ab of
  // ab*s*S(s).
  const std::vector<double>& s = model.samples();
  const std::size_t n = s.size();
  double best = 0.0;
  std::size_t i = static_cast<std::size_t>(
      std::lower_bound(s.begin(), s.end(), 1.0 / ab) - s.begin());
  while (i < n) {
    // skip to the last copy of a tied value; survival is evaluated at the atom
    std::size_t j = i;
    while (j + 1 < n && s[j + 1] == s[i]) ++j;
    const double surv = static_cast<double>(n - i) / static_cast<double>(n);
    best = std::max(best, ab * s[i] * surv);
    i = j + 1;
  }
  return best;
}

}  // namespace

double y_bar(const NullModel& model, double alpha, double b) {
  check_alpha(alpha);
  check_b(b);
  const double ab = alpha * b;
  return ab * model.tail_mean(1.0 / ab);
}

double y_exact(const NullModel& model, double alpha, double b, int k) {
  check_alpha(alpha);
  check_b(b);
  check_k(k);
  const double ab = alpha * b;
  double y = 0.0;
  for (int j = k - 1; j >= 1; --j) {
    y += static_cast<double>(k) / (static_cast<double>(j) * (j + 1.0)) *
         model.survival(k / (j * ab));
  }
  return y + model.survival(1.0 / ab);
}

double z_exact(const NullModel& model, double alpha, double b, int k) {
  check_alpha(alpha);
  check_b(b);
  check_k(k);
  const double ab = alpha * b;
  double z = 0.0;
  for (int j = 1; j <= k; ++j) {
    const double x = static_cast<double>(k) / j;
    z = std::max(z, x * model.survival(x / ab));
  }
  return z;
}

double z_bar(const NullModel& model, double alpha, double b) {
  check_alpha(alpha);
  check_b(b);
  const double ab = alpha * b;
  switch (model.family()) {
    case NullModel::Family::LogNormalLR:
      return z_bar_lognormal(model, ab);
    case NullModel::Family::Empirical:
      return z_bar_empirical(model, ab);
    case NullModel::Family::CalibratorNull:
      break;
  }
  return z_bar_grid(model, ab);
}

BoostResult boost_factor(const NullModel& model, double alpha, std::optional<int> k,
                         Dependence dependence, BoostMode mode) {
  check_alpha(alpha);
  if (mode == BoostMode::Exact && !k.has_value()) {
    throw std::invalid_argument("boost_factor: exact criteria need K");
  }
  if (k.has_value()) check_k(*k);

  BoostResult res;
  std::function<double(double)> criterion;
  if (dependence == Dependence::Arbitrary && mode == BoostMode::Exact) {
    res.criterion = BoostCriterion::AdExact;
    criterion = [&](double b) { return y_exact(model, alpha, b, *k); };
  } else if (dependence == Dependence::Arbitrary) {
    res.criterion = BoostCriterion::AdConservative;
    criterion = [&](double b) { return y_bar(model, alpha, b); };
  } else if (mode == BoostMode::Exact) {
    res.criterion = BoostCriterion::PrdsExact;
    criterion = [&](double b) { return z_exact(model, alpha, b, *k); };
  } else {
    res.criterion = BoostCriterion::PrdsConservative;
    criterion = [&](double b) { return z_bar(model, alpha, b); };
  }

  if (criterion(1.0) > alpha) {
    res.b = 1.0;
    res.achieved_value = criterion(1.0);
    res.at_floor = true;
    return res;
  }

  double lo = 1.0;
  double hi = 10.0 / alpha;
  int expansions = 0;
  while (criterion(hi) <= alpha) {
    lo = hi;
    hi *= 10.0;
    if (++expansions >= 10) {
      // degenerate model (criterion never reaches alpha); report the bracket end
      res.b = lo;
      res.achieved_value = criterion(lo);
      res.capped = true;
      return res;
    }
  }
  while ((hi - lo) / lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    (criterion(mid) <= alpha ? lo : hi) = mid;
  }
  res.b = lo;
  res.achieved_value = criterion(lo);
  return res;
}

double boost_factor_quantile(const NullModel& model, double alpha) {
  check_alpha(alpha);
  if (!check_condition_11(model, alpha)) {
    throw std::domain_error(
        "boost_factor_quantile: t*P(E>=t) is not maximized at the (1-alpha)-quantile, so the "
        "quantile rule is invalid for this null; use boost_factor instead");
  }
  const double q = model.quantile(1.0 - alpha);
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw std::domain_error("boost_factor_quantile: (1-alpha)-quantile not positive and finite");
  }
  return std::max(1.0, 1.0 / (alpha * q));
}

bool check_condition_11(const NullModel& model, double alpha) {
  check_alpha(alpha);
  const double q = model.quantile(1.0 - alpha);
  if (!std::isfinite(q)) return false;
  const double reference = q > 0.0 ? q * model.survival(q) : 0.0;

  double t_hi = model.support_max();
  if (!std::isfinite(t_hi)) t_hi = model.quantile(1.0 - 1e-9);
  if (!std::isfinite(t_hi)) return false;
  if (t_hi <= q) return true;  // nothing above the quantile

  double slack = 1e-3;
  if (model.family() == NullModel::Family::Empirical) {
    // widen by the sampling error of the survival estimate at the quantile
    const double n = static_cast<double>(model.samples().size());
    const double sq = std::max(model.survival(q), 1.0 / n);
    slack += 6.0 * std::sqrt((1.0 - sq) / (n * sq));
  }

  const double t_lo = q > 0.0 ? q : t_hi * 1e-9;
  double worst = 0.0;
  for (double t : log_spaced(t_lo, t_hi, 10000)) {
    worst = std::max(worst, t * model.survival(t));
  }
  return worst <= reference * (1.0 + slack) + 1e-12;
}

EvidenceVector apply_boost(const EvidenceVector& e, const std::vector<double>& factors) {
  if (e.kind() != EvidenceKind::EValues) {
    throw std::invalid_argument("apply_boost: e-values required");
  }
  if (static_cast<int>(factors.size()) != e.size()) {
    throw std::invalid_argument("apply_boost: need one factor per hypothesis");
  }
  std::vector<double> boosted(factors.size());
  for (int i = 0; i < e.size(); ++i) {
    const double b = factors[static_cast<std::size_t>(i)];
    if (!(b >= 1.0)) throw std::invalid_argument("apply_boost: factors must be >= 1");
    boosted[static_cast<std::size_t>(i)] = b * e[i];
  }
  return EvidenceVector::e_values(std::move(boosted));
}

}  // namespace ebh

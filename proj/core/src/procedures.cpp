#include "ebh/procedures.hpp"

#include "ebh/math.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace ebh {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }
}

void require_kind(const EvidenceVector& v, EvidenceKind kind, const char* who) {
  if (v.kind() != kind) {
    throw std::invalid_argument(std::string(who) + ": evidence vector has the wrong kind");
  }
}

std::vector<double> sorted_desc(const std::vector<double>& v) {
  std::vector<double> s(v);
  std::sort(s.begin(), s.end(), std::greater<double>());
  return s;
}

std::vector<double> sorted_asc(const std::vector<double>& v) {
  std::vector<double> s(v);
  std::sort(s.begin(), s.end());
  return s;
}

// Step-up on e-values against per-rank cutoffs c_k (nonincreasing in k):
// k* = max{k : e_[k] >= c_k}, rejecting {k : e_k >= c_{k*}}. Selection and
// rejection use the same cutoff values, so the rejected set has exactly k*
// elements: e_[k*+1] >= c_{k*} would imply e_[k*+1] >= c_{k*+1}, contradicting
// maximality of k*.
TestOutcome e_step_up_at(const EvidenceVector& e, const std::vector<double>& cutoffs,
                         double alpha, std::string name) {
  const int k = e.size();
  const std::vector<double> ord = sorted_desc(e.values());
  int k_star = 0;
  for (int m = k; m >= 1; --m) {
    if (ord[m - 1] >= cutoffs[m - 1]) {
      k_star = m;
      break;
    }
  }
  TestOutcome out;
  out.k_star = k_star;
  out.alpha = alpha;
  out.procedure = std::move(name);
  out.threshold = k_star >= 1 ? cutoffs[k_star - 1] : kInf;
  if (k_star >= 1) {
    for (int i = 0; i < k; ++i) {
      if (e[i] >= out.threshold) out.rejected.push_back(i + 1);
    }
  }
  return out;
}

// Step-up on p-values against nondecreasing levels: k* = max{k : p_(k) <= a_k},
// rejecting {k : p_k <= a_{k*}} — again exactly k* elements by the same
// tie-crossing argument.
TestOutcome p_step_up_at(const EvidenceVector& p, const std::vector<double>& levels,
                         double alpha, std::string name) {
  const int k = p.size();
  const std::vector<double> ord = sorted_asc(p.values());
  int k_star = 0;
  for (int m = k; m >= 1; --m) {
    if (ord[m - 1] <= levels[m - 1]) {
      k_star = m;
      break;
    }
  }
  TestOutcome out;
  out.k_star = k_star;
  out.alpha = alpha;
  out.procedure = std::move(name);
  out.threshold = k_star >= 1 ? levels[k_star - 1] : 0.0;
  if (k_star >= 1) {
    for (int i = 0; i < k; ++i) {
      if (p[i] <= out.threshold) out.rejected.push_back(i + 1);
    }
  }
  return out;
}

std::vector<double> base_e_cutoffs(int k, double alpha) {
  std::vector<double> c(static_cast<std::size_t>(k));
  for (int m = 1; m <= k; ++m) c[m - 1] = k / (alpha * m);
  return c;
}

std::vector<double> bh_levels(int k, double alpha) {
  std::vector<double> a(static_cast<std::size_t>(k));
  for (int m = 1; m <= k; ++m) a[m - 1] = alpha * m / k;
  return a;
}

}  // namespace

bool TestOutcome::contains(int k) const {
  return std::binary_search(rejected.begin(), rejected.end(), k);
}

TestOutcome e_bh(const EvidenceVector& e, double alpha) {
  check_alpha(alpha);
  require_kind(e, EvidenceKind::EValues, "e_bh");
  return e_step_up_at(e, base_e_cutoffs(e.size(), alpha), alpha, "e_bh");
}

TestOutcome bh(const EvidenceVector& p, double alpha) {
  check_alpha(alpha);
  require_kind(p, EvidenceKind::PValues, "bh");
  return p_step_up_at(p, bh_levels(p.size(), alpha), alpha, "bh");
}

TestOutcome by(const EvidenceVector& p, double alpha) {
  check_alpha(alpha);
  require_kind(p, EvidenceKind::PValues, "by");
  const double eff = alpha / harmonic_sum(p.size());
  TestOutcome out = p_step_up_at(p, bh_levels(p.size(), eff), alpha, "by");
  return out;
}

double cbh_level(double alpha) {
  check_alpha(alpha);
  // g(x) = x*(1 + log(1/x)) is strictly increasing on (0, 1); g(alpha) >= alpha,
  // so the root lies in [lo, alpha].
  auto g = [](double x) { return x * (1.0 - std::log(x)); };
  double lo = 1e-12;
  double hi = alpha;
  if (g(lo) > alpha) return lo;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

TestOutcome cbh(const EvidenceVector& p, double alpha) {
  check_alpha(alpha);
  require_kind(p, EvidenceKind::PValues, "cbh");
  return p_step_up_at(p, bh_levels(p.size(), cbh_level(alpha)), alpha, "cbh");
}

TestOutcome step_up(const EvidenceVector& p, const TransformSpec& psi) {
  require_kind(p, EvidenceKind::PValues, "step_up");
  const std::vector<double> levels = psi.step_up_levels(p.size());
  return p_step_up_at(p, levels, levels.empty() ? 0.0 : levels.back(), "step_up");
}

double y_psi_from_levels(std::span<const double> levels) {
  const int k = static_cast<int>(levels.size());
  if (k < 1) throw std::invalid_argument("y_psi_from_levels: empty level table");
  double y = levels[k - 1];
  // Sum smallest terms first: j large contributes K/(j(j+1))*a_j ~ a_K/j^2.
  for (int j = k - 1; j >= 1; --j) {
    y += static_cast<double>(k) / (static_cast<double>(j) * (j + 1.0)) * levels[j - 1];
  }
  return y;
}

double z_psi_from_levels(std::span<const double> levels) {
  const int k = static_cast<int>(levels.size());
  if (k < 1) throw std::invalid_argument("z_psi_from_levels: empty level table");
  double z = 0.0;
  for (int j = 1; j <= k; ++j) {
    z = std::max(z, static_cast<double>(k) / j * levels[j - 1]);
  }
  return z;
}

TestOutcome e_test_phi(const EvidenceVector& e, std::span<const double> phi_inverse) {
  require_kind(e, EvidenceKind::EValues, "e_test_phi");
  const int k = e.size();
  if (static_cast<int>(phi_inverse.size()) != k) {
    throw std::invalid_argument("e_test_phi: need one threshold per hypothesis");
  }
  std::vector<double> cutoffs(phi_inverse.begin(), phi_inverse.end());
  for (int m = 0; m < k; ++m) {
    if (std::isnan(cutoffs[m]) || cutoffs[m] < 0.0) {
      throw std::invalid_argument("e_test_phi: thresholds must be nonnegative");
    }
    if (m > 0 && cutoffs[m] > cutoffs[m - 1]) {
      throw std::invalid_argument("e_test_phi: thresholds must be nonincreasing in rank");
    }
  }
  return e_step_up_at(e, cutoffs, 0.0, "e_test");
}

TestOutcome e_test_phi(const EvidenceVector& e, const TransformSpec& phi) {
  const std::vector<double> cutoffs = phi.e_thresholds(e.size());
  TestOutcome out = e_test_phi(e, std::span<const double>(cutoffs));
  if (phi.family() == TransformSpec::Family::LinearE) out.alpha = phi.alpha();
  return out;
}

TestOutcome weighted_e_bh(const EvidenceVector& e, const Weights& w, double alpha) {
  check_alpha(alpha);
  require_kind(e, EvidenceKind::EValues, "weighted_e_bh");
  const int k = e.size();
  if (w.size() != k) {
    throw std::invalid_argument("weighted_e_bh: need one weight per hypothesis");
  }
  // A zero weight removes its hypothesis outright, even against an infinite
  // e-value (0 * inf would otherwise be NaN).
  std::vector<double> weighted(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    weighted[i] = w[i] == 0.0 ? 0.0 : w[i] * e[i];
  }
  TestOutcome out = e_step_up_at(EvidenceVector::e_values(std::move(weighted)),
                                 base_e_cutoffs(k, alpha), alpha, "weighted_e_bh");
  return out;
}

bool is_self_consistent(const EvidenceVector& e, const std::vector<int>& rejected, double alpha) {
  check_alpha(alpha);
  require_kind(e, EvidenceKind::EValues, "is_self_consistent");
  if (rejected.empty()) return true;
  const int k = e.size();
  const double need = k / (alpha * static_cast<double>(rejected.size()));
  for (int idx : rejected) {
    if (idx < 1 || idx > k) {
      throw std::invalid_argument("is_self_consistent: index out of range");
    }
    if (!(e[idx - 1] >= need)) return false;
  }
  return true;
}

StructureOracle StructureOracle::all_subsets() {
  StructureOracle o;
  o.member = [](const std::vector<int>&) { return true; };
  o.expansions = [](const std::vector<int>& s, int k) {
    std::vector<int> cands;
    cands.reserve(static_cast<std::size_t>(k));
    for (int i = 1; i <= k; ++i) {
      if (!std::binary_search(s.begin(), s.end(), i)) cands.push_back(i);
    }
    return cands;
  };
  return o;
}

StructureOracle StructureOracle::contiguous_runs() {
  StructureOracle o;
  o.member = [](const std::vector<int>& s) {
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (s[i] != s[i - 1] + 1) return false;
    }
    return true;
  };
  o.expansions = [](const std::vector<int>& s, int k) {
    std::vector<int> cands;
    if (s.empty()) {
      for (int i = 1; i <= k; ++i) cands.push_back(i);
      return cands;
    }
    if (s.front() > 1) cands.push_back(s.front() - 1);
    if (s.back() < k) cands.push_back(s.back() + 1);
    return cands;
  };
  return o;
}

StructureOracle StructureOracle::empty_only() {
  StructureOracle o;
  o.member = [](const std::vector<int>& s) { return s.empty(); };
  o.expansions = [](const std::vector<int>&, int) { return std::vector<int>{}; };
  return o;
}

TestOutcome structured_e_bh(const EvidenceVector& e, double alpha, const StructureOracle& oracle) {
  check_alpha(alpha);
  require_kind(e, EvidenceKind::EValues, "structured_e_bh");
  if (!oracle.member || !oracle.expansions) {
    throw std::invalid_argument("structured_e_bh: oracle callbacks must be set");
  }
  const int k = e.size();

  std::vector<int> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 1);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return e[a - 1] > e[b - 1]; });

  auto consistent = [&](const std::vector<int>& s) {
    const double need = k / (alpha * static_cast<double>(s.size()));
    for (int idx : s) {
      if (!(e[idx - 1] >= need)) return false;
    }
    return true;
  };

  // Greedy: grow from each singleton seed, at each step adding the admissible
  // candidate with the largest e-value, and keep the largest self-consistent
  // set seen anywhere along the way. Sound (the result is always in the
  // structure and self-consistent) but not guaranteed maximal.
  std::vector<int> best;
  for (int seed : order) {
    std::vector<int> cur{seed};
    if (!oracle.member(cur)) continue;
    if (consistent(cur) && cur.size() > best.size()) best = cur;
    for (int step = 1; step < k; ++step) {
      std::vector<int> cands = oracle.expansions(cur, k);
      std::sort(cands.begin(), cands.end(), [&](int a, int b) { return e[a - 1] > e[b - 1]; });
      bool grew = false;
      for (int c : cands) {
        if (c < 1 || c > k) continue;
        if (std::binary_search(cur.begin(), cur.end(), c)) continue;
        std::vector<int> trial = cur;
        trial.insert(std::upper_bound(trial.begin(), trial.end(), c), c);
        if (!oracle.member(trial)) continue;
        cur = std::move(trial);
        grew = true;
        break;
      }
      if (!grew) break;
      if (consistent(cur) && cur.size() > best.size()) best = cur;
    }
  }

  TestOutcome out;
  out.alpha = alpha;
  out.procedure = "structured_e_bh";
  out.k_star = static_cast<int>(best.size());
  out.threshold = best.empty() ? kInf : k / (alpha * static_cast<double>(best.size()));
  out.rejected = std::move(best);
  return out;
}

TestOutcome post_selection_e_bh(const EvidenceVector& e, const std::vector<int>& selected,
                                double alpha) {
  check_alpha(alpha);
  require_kind(e, EvidenceKind::EValues, "post_selection_e_bh");
  const int k = e.size();
  std::vector<int> sel(selected);
  if (sel.empty()) throw std::invalid_argument("post_selection_e_bh: selection must be nonempty");
  std::sort(sel.begin(), sel.end());
  if (std::adjacent_find(sel.begin(), sel.end()) != sel.end()) {
    throw std::invalid_argument("post_selection_e_bh: duplicate selected index");
  }
  for (int idx : sel) {
    if (idx < 1 || idx > k) {
      throw std::invalid_argument("post_selection_e_bh: selected index out of range");
    }
  }

  TestOutcome out;
  out.alpha = alpha;
  out.procedure = "post_selection_e_bh";
  out.threshold = kInf;
  const int m = static_cast<int>(sel.size());

  // Testing the selected subproblem of size m at level alpha*m/K gives rank-j
  // cutoffs m/((alpha*m/K)*j) = K/(alpha*j): the cutoffs live on the original
  // scale, unchanged.
  std::vector<double> sub(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) sub[j] = e[sel[j] - 1];
  std::sort(sub.begin(), sub.end(), std::greater<double>());
  int k_star = 0;
  for (int j = m; j >= 1; --j) {
    if (sub[j - 1] >= k / (alpha * j)) {
      k_star = j;
      break;
    }
  }
  out.k_star = k_star;
  if (k_star >= 1) {
    out.threshold = k / (alpha * k_star);
    for (int idx : sel) {
      if (e[idx - 1] >= out.threshold) out.rejected.push_back(idx);
    }
  }
  return out;
}

TestOutcome multi_transform_test(const EvidenceVector& p, const std::vector<TransformSpec>& psis) {
  require_kind(p, EvidenceKind::PValues, "multi_transform_test");
  const int k = p.size();
  if (static_cast<int>(psis.size()) != k) {
    throw std::invalid_argument("multi_transform_test: need one transform per hypothesis");
  }
  std::vector<double> r(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) r[i] = psis[static_cast<std::size_t>(i)].psi(p[i]);

  std::vector<double> ord = sorted_desc(r);
  int k_star = 0;
  for (int m = k; m >= 1; --m) {
    if (ord[m - 1] >= static_cast<double>(k) / m) {
      k_star = m;
      break;
    }
  }
  TestOutcome out;
  out.alpha = 0.0;
  out.procedure = "multi_transform";
  out.k_star = k_star;
  out.threshold = k_star >= 1 ? static_cast<double>(k) / k_star : kInf;
  if (k_star >= 1) {
    for (int i = 0; i < k; ++i) {
      if (r[static_cast<std::size_t>(i)] >= out.threshold) out.rejected.push_back(i + 1);
    }
  }
  return out;
}

}  // namespace ebh

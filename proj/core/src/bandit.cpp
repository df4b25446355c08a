#include "ebh/bandit.hpp"

#include "ebh/evidence.hpp"
#include "ebh/math.hpp"
#include "ebh/procedures.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace ebh {

std::string to_string(BanditProcedure p) {
  switch (p) {
    case BanditProcedure::EBH: return "e-BH";
    case BanditProcedure::BH: return "BH";
    case BanditProcedure::BY: return "BY";
    case BanditProcedure::CBH: return "cBH";
  }
  return "?";
}

void BanditConfig::validate() const {
  if (arms < 1 || budget < 1 || trials < 1) {
    throw std::invalid_argument("bandit config: arms, budget, trials must be >= 1");
  }
  if (!(theta >= 0.0) || !(theta <= 1.0)) {
    throw std::invalid_argument("bandit config: theta must lie in [0, 1]");
  }
  if (!(mu > 0.0)) throw std::invalid_argument("bandit config: mu must be positive");
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("bandit config: alpha must lie in (0, 1)");
  }
}

StepUpCounter::StepUpCounter(std::vector<double> fixed, int k, double level)
    : fixed_(std::move(fixed)), k_(k) {
  if (k_ < 1 || static_cast<int>(fixed_.size()) != k_ - 1) {
    throw std::invalid_argument("StepUpCounter: need K-1 fixed entries");
  }
  std::sort(fixed_.begin(), fixed_.end(), std::greater<double>());
  cutoffs_.resize(static_cast<std::size_t>(k_));
  for (int m = 1; m <= k_; ++m) cutoffs_[m - 1] = k_ / (level * m);
  rebuild();
}

void StepUpCounter::rebuild() {
  // With the query value inserted at sorted position pos (0-based), rank m of
  // the merged vector holds fixed_[m-1] for m <= pos and fixed_[m-2] for
  // m >= pos+2. Precomputing best ranks on both sides makes a query O(log K).
  pref_.assign(static_cast<std::size_t>(k_), 0);
  for (int p = 1; p <= k_ - 1; ++p) {
    pref_[p] = fixed_[p - 1] >= cutoffs_[p - 1] ? p : pref_[p - 1];
  }
  suf_.assign(static_cast<std::size_t>(k_) + 2, 0);
  for (int j = k_; j >= 2; --j) {
    suf_[j] = std::max(fixed_[j - 2] >= cutoffs_[j - 1] ? j : 0, suf_[j + 1]);
  }
}

int StepUpCounter::count_with(double x) const {
  const auto it = std::lower_bound(fixed_.begin(), fixed_.end(), x, std::greater<double>());
  const int pos = static_cast<int>(it - fixed_.begin());  // entries strictly above x
  int best = pref_[pos];
  if (x >= cutoffs_[pos]) best = std::max(best, pos + 1);
  best = std::max(best, suf_[pos + 2]);
  return best;
}

void StepUpCounter::replace(double old_value, double new_value) {
  const auto it = std::lower_bound(fixed_.begin(), fixed_.end(), old_value,
                                   std::greater<double>());
  if (it == fixed_.end() || *it != old_value) {
    throw std::invalid_argument("StepUpCounter::replace: value not present");
  }
  fixed_.erase(it);
  fixed_.insert(std::lower_bound(fixed_.begin(), fixed_.end(), new_value,
                                 std::greater<double>()),
                new_value);
  rebuild();
}

BanditTrialData draw_bandit_data(const BanditConfig& cfg, Rng& rng) {
  cfg.validate();
  const int k = cfg.arms;
  BanditTrialData data;
  data.non_null.resize(static_cast<std::size_t>(k));
  data.rewards.resize(static_cast<std::size_t>(k));
  for (int arm = 1; arm <= k; ++arm) {
    const double p_signal = cfg.theta * (k - arm + 1) / (k + 1.0);
    const bool non_null = rng.bernoulli(p_signal);
    const double s = rng.exponential(cfg.mu);  // drawn for every arm to keep streams aligned
    data.non_null[static_cast<std::size_t>(arm - 1)] = non_null ? 1 : 0;
    auto& row = data.rewards[static_cast<std::size_t>(arm - 1)];
    row.resize(static_cast<std::size_t>(cfg.budget));
    const double shift = (non_null ? s : 0.0) - 0.5;
    for (double& x : row) x = std::exp(rng.normal() + shift);
  }
  return data;
}

BanditRunDetail run_bandit_detailed(const BanditTrialData& data, BanditProcedure procedure,
                                    double alpha) {
  const int k = static_cast<int>(data.non_null.size());
  const int n = k > 0 ? static_cast<int>(data.rewards.front().size()) : 0;
  if (k < 1 || n < 1) throw std::invalid_argument("run_bandit_on_data: empty data");

  const bool e_side = procedure == BanditProcedure::EBH;
  double level = alpha;
  if (procedure == BanditProcedure::BY) level = alpha / harmonic_sum(k);
  if (procedure == BanditProcedure::CBH) level = cbh_level(alpha);

  // Untouched arms carry evidence 1 (initial e-process value; equivalently the
  // reciprocal of a p-value clamped at 1).
  StepUpCounter counter(std::vector<double>(static_cast<std::size_t>(k - 1), 1.0), k, level);

  BanditRunDetail detail;
  detail.level = level;
  detail.pulls.resize(static_cast<std::size_t>(k), 0);
  detail.evidence.assign(static_cast<std::size_t>(k), 1.0);
  for (int arm = 0; arm < k; ++arm) {
    const int baseline = counter.count_with(1.0);
    const auto& row = data.rewards[static_cast<std::size_t>(arm)];
    double product = 1.0;
    double peak = 1.0;
    double evidence = 1.0;
    int pulls = 0;
    for (int j = 0; j < n; ++j) {
      product *= row[static_cast<std::size_t>(j)];
      peak = std::max(peak, product);
      evidence = e_side ? product : peak;
      ++pulls;
      if (counter.count_with(evidence) > baseline) break;
    }
    detail.pulls[static_cast<std::size_t>(arm)] = pulls;
    detail.evidence[static_cast<std::size_t>(arm)] = evidence;
    if (arm < k - 1) counter.replace(1.0, evidence);
  }

  detail.outcome = e_bh(EvidenceVector::e_values(detail.evidence), level);
  return detail;
}

TrialMetrics run_bandit_on_data(const BanditTrialData& data, BanditProcedure procedure,
                                double alpha) {
  const BanditRunDetail detail = run_bandit_detailed(data, procedure, alpha);
  const int k = static_cast<int>(data.non_null.size());
  const int n = static_cast<int>(data.rewards.front().size());

  long pulls_used = 0;
  for (int t : detail.pulls) pulls_used += t;
  int td = 0;
  for (int idx : detail.outcome.rejected) {
    if (data.non_null[static_cast<std::size_t>(idx - 1)]) ++td;
  }
  const int r = static_cast<int>(detail.outcome.rejected.size());

  TrialMetrics m;
  m.rejections = r;
  m.true_discoveries = td;
  m.fdp_pct = 100.0 * (r - td) / std::max(r, 1);
  m.unused_budget_pct =
      100.0 * (static_cast<double>(n) * k - static_cast<double>(pulls_used)) /
      (static_cast<double>(n) * k);
  return m;
}

TrialMetrics run_bandit_trial(const BanditConfig& cfg, Rng& rng) {
  const BanditTrialData data = draw_bandit_data(cfg, rng);
  return run_bandit_on_data(data, cfg.procedure, cfg.alpha);
}

std::vector<BanditStudyRow> run_bandit_study(const BanditConfig& cfg, int threads) {
  cfg.validate();
  constexpr BanditProcedure kProcedures[] = {BanditProcedure::EBH, BanditProcedure::BH,
                                             BanditProcedure::BY, BanditProcedure::CBH};
  const int trials = cfg.trials;
  // One slot per (trial, procedure); filled in parallel, reduced sequentially
  // so the averages do not depend on the thread count.
  std::vector<std::array<TrialMetrics, 4>> per_trial(static_cast<std::size_t>(trials));

  int n_threads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::clamp(n_threads, 1, trials);

  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int t = next.fetch_add(1);
      if (t >= trials) return;
      Rng rng = Rng::for_trial(cfg.seed, static_cast<std::uint64_t>(t));
      const BanditTrialData data = draw_bandit_data(cfg, rng);
      for (int p = 0; p < 4; ++p) {
        per_trial[static_cast<std::size_t>(t)][static_cast<std::size_t>(p)] =
            run_bandit_on_data(data, kProcedures[p], cfg.alpha);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::vector<BanditStudyRow> rows;
  for (int p = 0; p < 4; ++p) {
    BanditStudyRow row;
    row.procedure = kProcedures[p];
    row.trials = trials;
    for (int t = 0; t < trials; ++t) {
      const TrialMetrics& m = per_trial[static_cast<std::size_t>(t)][static_cast<std::size_t>(p)];
      row.mean.rejections += m.rejections;
      row.mean.unused_budget_pct += m.unused_budget_pct;
      row.mean.true_discoveries += m.true_discoveries;
      row.mean.fdp_pct += m.fdp_pct;
    }
    row.mean.rejections /= trials;
    row.mean.unused_budget_pct /= trials;
    row.mean.true_discoveries /= trials;
    row.mean.fdp_pct /= trials;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace ebh

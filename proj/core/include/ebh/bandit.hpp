#pragma once

#include "ebh/procedures.hpp"
#include "ebh/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ebh {

enum class BanditProcedure { EBH, BH, BY, CBH };

std::string to_string(BanditProcedure p);

// Ordered multi-armed bandit screening: arms are visited in order, each pulled
// until its evidence creates a new discovery or the per-arm budget runs out,
// and the final evidence vector is tested at level alpha.
struct BanditConfig {
  int arms = 500;        // K
  int budget = 50;       // n, max pulls per arm
  double theta = 0.5;    // non-null probability scale: arm k non-null w.p. theta*(K-k+1)/(K+1)
  double mu = 1.0;       // mean of exponential signal strengths
  double alpha = 0.05;
  BanditProcedure procedure = BanditProcedure::EBH;
  int trials = 500;
  std::uint64_t seed = 1;

  void validate() const;
};

struct TrialMetrics {
  double rejections = 0.0;          // R
  double unused_budget_pct = 0.0;   // B% = 100*(n*K - sum T_k)/(n*K)
  double true_discoveries = 0.0;    // TD
  double fdp_pct = 0.0;             // 100*(R - TD)/max(R, 1)
};

struct BanditStudyRow {
  BanditProcedure procedure;
  TrialMetrics mean;  // averaged over trials
  int trials = 0;
};

// One trial's complete pre-drawn randomness: ground truth plus the full n
// rewards for every arm (stopping rules consume a prefix). Sharing one draw
// across the four procedures compares them on identical data.
struct BanditTrialData {
  std::vector<char> non_null;            // K flags
  std::vector<std::vector<double>> rewards;  // K rows of n rewards
};

BanditTrialData draw_bandit_data(const BanditConfig& cfg, Rng& rng);

// Runs the sequential algorithm for one procedure on fixed data. e-BH tracks
// running-product e-values; BH/BY/cBH track running-max (anytime-valid
// reciprocal-p) evidence and are evaluated through the same step-up engine on
// reciprocals, which is decision-identical to running them on p-values.
TrialMetrics run_bandit_on_data(const BanditTrialData& data, BanditProcedure procedure,
                                double alpha);

// Pull-by-pull record of one run, exposed so the stopping rule can be replayed
// and audited against direct recomputation.
struct BanditRunDetail {
  std::vector<int> pulls;        // T_k, pulls consumed per arm
  std::vector<double> evidence;  // final engine-side evidence per arm
  double level = 0.0;            // level the step-up engine ran at
  TestOutcome outcome;           // final outcome on `evidence` at `level`
};

BanditRunDetail run_bandit_detailed(const BanditTrialData& data, BanditProcedure procedure,
                                    double alpha);

// Draws one trial from the stream and runs cfg.procedure.
TrialMetrics run_bandit_trial(const BanditConfig& cfg, Rng& rng);

// Averages all four procedures over cfg.trials independent trials (per-trial
// streams derived from cfg.seed). threads <= 0 picks the hardware count; the
// result is identical for any thread count.
std::vector<BanditStudyRow> run_bandit_study(const BanditConfig& cfg, int threads = 0);

// Incremental step-up rejection counter used by the stopping rule: K-1 fixed
// entries plus one query slot. count_with(x) returns the step-up count of the
// full vector against cutoffs K/(level*m) in O(log K); replace(old, new)
// updates a fixed entry in O(K). Exposed for testing against direct
// recomputation.
class StepUpCounter {
 public:
  // fixed has K-1 entries; level is the engine's alpha.
  StepUpCounter(std::vector<double> fixed, int k, double level);

  int count_with(double x) const;
  void replace(double old_value, double new_value);

 private:
  void rebuild();

  std::vector<double> fixed_;    // sorted descending, K-1 entries
  std::vector<double> cutoffs_;  // c_m = K/(level*m), m = 1..K
  // pref_[p] = max{m <= p : fixed_[m-1] >= c_m}; suf_[j] = max{m >= j : fixed_[m-2] >= c_m}
  std::vector<int> pref_;
  std::vector<int> suf_;
  int k_;
};

}  // namespace ebh

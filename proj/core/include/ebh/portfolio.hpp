#pragma once

#include <span>
#include <string>
#include <vector>

namespace ebh {

// One asset's monthly close prices. A series that stops before the study
// horizon marks the asset dead (alive = false); dead assets contribute the
// null-neutral evidence (e = 0, p = 1) to selection.
struct PriceSeries {
  std::string asset_id;
  int rank = 0;  // universe ordering (1 = largest); supplied by the data, not recomputed
  std::vector<double> prices;
  bool alive = true;
};

enum class SelectionMethod { EBH, BY };

std::string to_string(SelectionMethod m);

struct StrategyConfig {
  double lambda_frac = 0.5;                  // fraction of wealth rebalanced into the asset
  std::vector<double> alphas = {0.05, 0.10};
  int universe_size = 0;                     // top-N by rank; 0 = all assets
};

struct SelectionRow {
  SelectionMethod method;
  double alpha = 0.0;
  std::vector<std::string> asset_ids;  // selected, in universe order

  int count() const { return static_cast<int>(asset_ids.size()); }
};

// Month-over-month growth factors Y_j / Y_{j-1}; needs >= 2 positive prices.
std::vector<double> growth_ratios(const PriceSeries& series);

// W_0 = 1, W_t = W_{t-1} * (1 - lambda + lambda * x_t): the wealth of a
// strategy holding fraction lambda in the asset, rebalanced every period.
// lambda = 0 stays at 1; lambda = 1 is the cumulative product of growth.
std::vector<double> wealth_process(std::span<const double> growth, double lambda_frac);

struct WealthEvidence {
  double e = 0.0;
  double p = 1.0;
};

// e = final wealth; p = reciprocal of the running maximum (valid by the
// maximal inequality, and <= 1 since W_0 = 1). Dead assets map to (0, 1).
WealthEvidence evidence_from_wealth(std::span<const double> wealth, bool alive);

// Builds the evidence vector over the top-universe_size assets (dead ones
// included, with null-neutral evidence) and runs the e-value step-up on e and
// the harmonic-corrected p-value step-up on p at every configured alpha.
std::vector<SelectionRow> select_assets(const std::vector<PriceSeries>& series,
                                        const StrategyConfig& cfg);

}  // namespace ebh

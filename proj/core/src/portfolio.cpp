#include "ebh/portfolio.hpp"

#include "ebh/evidence.hpp"
#include "ebh/procedures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ebh {

std::string to_string(SelectionMethod m) {
  return m == SelectionMethod::EBH ? "e-BH" : "BY";
}

std::vector<double> growth_ratios(const PriceSeries& series) {
  if (series.prices.size() < 2) {
    throw std::invalid_argument("growth_ratios: need at least 2 prices (" + series.asset_id + ")");
  }
  for (double p : series.prices) {
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument("growth_ratios: prices must be positive (" + series.asset_id +
                                  ")");
    }
  }
  std::vector<double> ratios(series.prices.size() - 1);
  for (std::size_t j = 1; j < series.prices.size(); ++j) {
    ratios[j - 1] = series.prices[j] / series.prices[j - 1];
  }
  return ratios;
}

std::vector<double> wealth_process(std::span<const double> growth, double lambda_frac) {
  if (!(lambda_frac >= 0.0) || !(lambda_frac <= 1.0)) {
    throw std::invalid_argument("wealth_process: lambda must lie in [0, 1]");
  }
  for (double x : growth) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw std::invalid_argument("wealth_process: growth factors must be positive");
    }
  }
  std::vector<double> w;
  w.reserve(growth.size() + 1);
  w.push_back(1.0);
  for (double x : growth) {
    w.push_back(w.back() * (1.0 - lambda_frac + lambda_frac * x));
  }
  return w;
}

WealthEvidence evidence_from_wealth(std::span<const double> wealth, bool alive) {
  if (!alive) return {0.0, 1.0};
  if (wealth.empty() || wealth.front() != 1.0) {
    throw std::invalid_argument("evidence_from_wealth: wealth must start at 1");
  }
  double peak = 0.0;
  for (double w : wealth) {
    if (std::isnan(w) || w < 0.0) {
      throw std::invalid_argument("evidence_from_wealth: wealth must be nonnegative");
    }
    peak = std::max(peak, w);
  }
  return {wealth.back(), std::clamp(1.0 / peak, 0.0, 1.0)};
}

std::vector<SelectionRow> select_assets(const std::vector<PriceSeries>& series,
                                        const StrategyConfig& cfg) {
  if (series.empty()) throw std::invalid_argument("select_assets: empty universe");
  if (cfg.alphas.empty()) throw std::invalid_argument("select_assets: no alpha levels");
  for (double a : cfg.alphas) {
    if (!(a > 0.0) || !(a < 1.0)) {
      throw std::invalid_argument("select_assets: alpha must lie in (0, 1)");
    }
  }

  std::vector<const PriceSeries*> universe;
  universe.reserve(series.size());
  for (const PriceSeries& s : series) universe.push_back(&s);
  std::stable_sort(universe.begin(), universe.end(),
                   [](const PriceSeries* a, const PriceSeries* b) { return a->rank < b->rank; });
  if (cfg.universe_size > 0 && cfg.universe_size < static_cast<int>(universe.size())) {
    universe.resize(static_cast<std::size_t>(cfg.universe_size));
  }

  std::vector<double> e_vals, p_vals;
  e_vals.reserve(universe.size());
  p_vals.reserve(universe.size());
  for (const PriceSeries* s : universe) {
    WealthEvidence ev{0.0, 1.0};
    if (s->alive) {
      const std::vector<double> wealth = wealth_process(growth_ratios(*s), cfg.lambda_frac);
      ev = evidence_from_wealth(wealth, true);
    }
    e_vals.push_back(ev.e);
    p_vals.push_back(ev.p);
  }
  const EvidenceVector ev = EvidenceVector::e_values(std::move(e_vals));
  const EvidenceVector pv = EvidenceVector::p_values(std::move(p_vals));

  std::vector<SelectionRow> rows;
  for (SelectionMethod method : {SelectionMethod::EBH, SelectionMethod::BY}) {
    for (double alpha : cfg.alphas) {
      const TestOutcome out = method == SelectionMethod::EBH ? e_bh(ev, alpha) : by(pv, alpha);
      SelectionRow row;
      row.method = method;
      row.alpha = alpha;
      for (int idx : out.rejected) {
        row.asset_ids.push_back(universe[static_cast<std::size_t>(idx - 1)]->asset_id);
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace ebh

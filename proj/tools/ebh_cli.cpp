// Command-line front end: multiple-testing procedures, boosting-factor
// computation, the two simulation studies, and the price-series pipeline.
// Single-result commands emit JSON; studies emit CSV tables. Exit codes:
// 0 success, 2 flag/validation error, 1 runtime failure.

#include "ebh/bandit.hpp"
#include "ebh/boosting.hpp"
#include "ebh/csv.hpp"
#include "ebh/evidence.hpp"
#include "ebh/null_model.hpp"
#include "ebh/portfolio.hpp"
#include "ebh/procedures.hpp"
#include "ebh/ztest.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

std::uint64_t draw_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed.has_value()) return *seed;
  const std::uint64_t drawn = draw_seed();
  std::cerr << "note: --seed not given; using seed " << drawn << "\n";
  return drawn;
}

// Streams to the --out path, or stdout when none was given.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error(path + ": cannot open for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void finish() {
    if (file_.is_open()) {
      file_.close();
      if (!file_) throw std::runtime_error("write failed");
    }
  }

 private:
  std::ofstream file_;
};

double strict_stod(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": not a number: '" + s + "'");
  }
  if (pos != s.size()) throw std::invalid_argument(what + ": not a number: '" + s + "'");
  return v;
}

ebh::NullModel parse_model(const std::string& text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument(
        "--model must be calibrator:LAMBDA, lognormal-lr:DELTA, or empirical:FILE");
  }
  const std::string kind = text.substr(0, colon);
  const std::string arg = text.substr(colon + 1);
  if (kind == "calibrator") {
    return ebh::NullModel::calibrator_null(strict_stod(arg, "--model calibrator"));
  }
  if (kind == "lognormal-lr") {
    return ebh::NullModel::lognormal_lr(strict_stod(arg, "--model lognormal-lr"));
  }
  if (kind == "empirical") {
    const ebh::EvidenceVector v = ebh::read_evidence_csv(arg, ebh::EvidenceKind::EValues);
    ebh::NullModel m = ebh::NullModel::empirical(v.values());
    if (m.mean_warning()) {
      std::cerr << "warning: sample mean " << m.mean()
                << " exceeds 1 by more than 3 standard errors; implausible as a null\n";
    }
    return m;
  }
  throw std::invalid_argument("--model: unknown family '" + kind + "'");
}

json outcome_to_json(const ebh::TestOutcome& out) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["procedure"] = out.procedure;
  j["alpha"] = out.alpha;
  j["k_star"] = out.k_star;
  j["threshold"] = std::isfinite(out.threshold) ? json(out.threshold) : json(nullptr);
  j["rejected"] = out.rejected;
  return j;
}

const char* criterion_name(ebh::BoostCriterion c) {
  switch (c) {
    case ebh::BoostCriterion::AdExact: return "ad_exact";
    case ebh::BoostCriterion::AdConservative: return "ad_conservative";
    case ebh::BoostCriterion::PrdsExact: return "prds_exact";
    case ebh::BoostCriterion::PrdsConservative: return "prds_conservative";
  }
  return "?";
}

int run_test(const std::string& file, const std::string& procedure, double alpha,
             const std::string& kind_flag, const std::string& weights_path,
             const std::vector<int>& select, const std::string& levels_path,
             const std::string& out_path) {
  std::optional<ebh::EvidenceKind> kind;
  if (kind_flag == "e") kind = ebh::EvidenceKind::EValues;
  if (kind_flag == "p") kind = ebh::EvidenceKind::PValues;
  const ebh::EvidenceVector v = ebh::read_evidence_csv(file, kind);

  ebh::TestOutcome out;
  if (procedure == "ebh") {
    out = ebh::e_bh(v, alpha);
  } else if (procedure == "bh") {
    out = ebh::bh(v, alpha);
  } else if (procedure == "by") {
    out = ebh::by(v, alpha);
  } else if (procedure == "cbh") {
    out = ebh::cbh(v, alpha);
  } else if (procedure == "step-up") {
    if (levels_path.empty()) throw std::invalid_argument("--levels is required for step-up");
    const ebh::EvidenceVector levels =
        ebh::read_evidence_csv(levels_path, ebh::EvidenceKind::PValues);
    out = ebh::step_up(v, ebh::TransformSpec::level_table(levels.values()));
  } else if (procedure == "weighted-ebh") {
    if (weights_path.empty()) throw std::invalid_argument("--weights is required for weighted-ebh");
    const ebh::EvidenceVector w =
        ebh::read_evidence_csv(weights_path, ebh::EvidenceKind::EValues);
    out = ebh::weighted_e_bh(v, ebh::Weights(w.values()), alpha);
  } else {
    if (select.empty()) throw std::invalid_argument("--select is required for post-selection");
    out = ebh::post_selection_e_bh(v, select, alpha);
  }
  Output output(out_path);
  output.stream() << outcome_to_json(out).dump(2) << "\n";
  output.finish();
  return 0;
}

int run_boost(const std::string& model_spec, double alpha, std::optional<int> k,
              const std::string& dependence_flag, const std::string& mode_flag,
              const std::string& out_path) {
  const ebh::NullModel model = parse_model(model_spec);
  const ebh::Dependence dependence =
      dependence_flag == "prds" ? ebh::Dependence::Prds : ebh::Dependence::Arbitrary;
  ebh::BoostMode mode;
  if (mode_flag == "exact") {
    mode = ebh::BoostMode::Exact;
  } else if (mode_flag == "conservative") {
    mode = ebh::BoostMode::Conservative;
  } else {  // auto: exact when K is known, the K-free bound otherwise
    mode = k.has_value() ? ebh::BoostMode::Exact : ebh::BoostMode::Conservative;
  }
  const ebh::BoostResult res = ebh::boost_factor(model, alpha, k, dependence, mode);

  json j;
  j["schema_version"] = kSchemaVersion;
  j["model"] = model_spec;
  j["alpha"] = alpha;
  j["k"] = k.has_value() ? json(*k) : json(nullptr);
  j["dependence"] = dependence_flag;
  j["mode"] = mode == ebh::BoostMode::Exact ? "exact" : "conservative";
  j["b"] = res.b;
  j["criterion"] = criterion_name(res.criterion);
  j["achieved_value"] = res.achieved_value;
  j["at_floor"] = res.at_floor;
  j["capped"] = res.capped;
  Output output(out_path);
  output.stream() << j.dump(2) << "\n";
  output.finish();
  return 0;
}

int run_simulate_bandit(const ebh::BanditConfig& cfg, const std::string& procedure_filter,
                        int threads, const std::string& out_path) {
  const std::vector<ebh::BanditStudyRow> rows = ebh::run_bandit_study(cfg, threads);
  Output output(out_path);
  std::ostream& os = output.stream();
  os.precision(10);
  os << "# schema_version=" << kSchemaVersion << "\n";
  os << "procedure,R,B%,TD,FDP%\n";
  for (const ebh::BanditStudyRow& row : rows) {
    const std::string name = ebh::to_string(row.procedure);
    if (!procedure_filter.empty() && name != procedure_filter) continue;
    os << name << ',' << row.mean.rejections << ',' << row.mean.unused_budget_pct << ','
       << row.mean.true_discoveries << ',' << row.mean.fdp_pct << "\n";
  }
  output.finish();
  return 0;
}

int run_simulate_ztest(const ebh::ZTestConfig& cfg, int threads, const std::string& out_path) {
  const std::vector<ebh::ZTestCell> cells = ebh::run_ztest_study(cfg, threads);
  Output output(out_path);
  std::ostream& os = output.stream();
  os.precision(10);
  os << "# schema_version=" << kSchemaVersion << "\n";
  os << "method,alpha,rejections,FDP%\n";
  for (const ebh::ZTestCell& c : cells) {
    os << ebh::to_string(c.method) << ',' << c.alpha << ',' << c.mean_rejections << ','
       << c.mean_fdp_pct << "\n";
  }
  output.finish();
  return 0;
}

int run_analyze_prices(const std::string& file, double lambda, std::vector<double> alphas,
                       const std::vector<std::string>& universes, const std::string& out_path,
                       const std::string& ids_out_path) {
  const std::vector<ebh::PriceSeries> series = ebh::read_price_csv(file);

  struct UniverseResult {
    std::string label;
    std::vector<ebh::SelectionRow> rows;
  };
  std::vector<UniverseResult> results;
  for (const std::string& u : universes) {
    ebh::StrategyConfig cfg;
    cfg.lambda_frac = lambda;
    cfg.alphas = alphas;
    if (u == "all") {
      cfg.universe_size = 0;
    } else {
      const double n = strict_stod(u, "--universe");
      if (n < 1 || n != static_cast<int>(n)) {
        throw std::invalid_argument("--universe: must be a positive integer or 'all'");
      }
      cfg.universe_size = static_cast<int>(n);
    }
    results.push_back({u == "all" ? "all" : "top" + u, ebh::select_assets(series, cfg)});
  }

  // Table layout: one row per method and level, one count column per universe.
  Output output(out_path);
  std::ostream& os = output.stream();
  os.precision(10);
  os << "# schema_version=" << kSchemaVersion << "\n";
  os << "method,alpha";
  for (const UniverseResult& r : results) os << ',' << r.label;
  os << "\n";
  const std::size_t n_rows = results.front().rows.size();
  for (std::size_t i = 0; i < n_rows; ++i) {
    const ebh::SelectionRow& head = results.front().rows[i];
    os << ebh::to_string(head.method) << ',' << head.alpha;
    for (const UniverseResult& r : results) os << ',' << r.rows[i].count();
    os << "\n";
  }
  output.finish();

  json ids;
  ids["schema_version"] = kSchemaVersion;
  ids["lambda"] = lambda;
  ids["selections"] = json::array();
  for (const UniverseResult& r : results) {
    for (const ebh::SelectionRow& row : r.rows) {
      ids["selections"].push_back({{"method", ebh::to_string(row.method)},
                                   {"alpha", row.alpha},
                                   {"universe", r.label},
                                   {"asset_ids", row.asset_ids}});
    }
  }
  if (!ids_out_path.empty()) {
    Output ids_out(ids_out_path);
    ids_out.stream() << ids.dump(2) << "\n";
    ids_out.finish();
  } else if (!out_path.empty()) {
    std::cout << ids.dump(2) << "\n";
  } else {
    std::cout << "# selected ids (json):\n" << ids.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"e-value and p-value multiple testing: step-up procedures, boosting, simulations, "
               "and price-series selection"};
  app.require_subcommand(1);

  // --- test ---
  auto* test = app.add_subcommand("test", "Run a rejection procedure on an evidence CSV");
  std::string test_file, test_procedure = "ebh", test_kind = "auto", test_out;
  std::string test_weights, test_levels;
  std::vector<int> test_select;
  double test_alpha = 0.0;
  test->add_option("file", test_file, "evidence CSV (.evals.csv or .pvals.csv)")->required();
  test->add_option("--procedure", test_procedure,
                   "ebh|bh|by|cbh|step-up|weighted-ebh|post-selection (default ebh)")
      ->check(CLI::IsMember(
          {"ebh", "bh", "by", "cbh", "step-up", "weighted-ebh", "post-selection"}));
  test->add_option("--weights", test_weights, "weights CSV (weighted-ebh)");
  test->add_option("--select", test_select, "1-based indices of the selected subset")
      ->delimiter(',');
  test->add_option("--levels", test_levels, "per-rank level CSV (step-up)");
  test->add_option("--alpha", test_alpha, "target FDR level in (0,1)")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  test->add_option("--kind", test_kind, "override evidence kind: e|p (default: from extension)")
      ->check(CLI::IsMember({"e", "p", "auto"}));
  test->add_option("--out", test_out, "output path (default: stdout)");

  // --- boost ---
  auto* boost = app.add_subcommand("boost", "Compute a boosting factor for a null model");
  std::string boost_model, boost_dependence, boost_mode = "auto", boost_out;
  double boost_alpha = 0.0;
  std::optional<int> boost_k;
  boost->add_option("--model", boost_model, "calibrator:LAMBDA | lognormal-lr:DELTA | empirical:FILE")
      ->required();
  boost->add_option("--alpha", boost_alpha, "target FDR level in (0,1)")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  boost->add_option("--k", boost_k, "number of hypotheses (enables the exact criteria)")
      ->check(CLI::PositiveNumber);
  boost->add_option("--dependence", boost_dependence, "ad|prds")
      ->required()
      ->check(CLI::IsMember({"ad", "prds"}));
  boost->add_option("--mode", boost_mode,
                    "exact|conservative (default: exact when --k is given, else conservative)")
      ->check(CLI::IsMember({"exact", "conservative", "auto"}));
  boost->add_option("--out", boost_out, "output path (default: stdout)");

  // --- simulate-bandit ---
  auto* bandit = app.add_subcommand("simulate-bandit",
                                    "Ordered bandit screening study (one row per procedure)");
  ebh::BanditConfig bandit_cfg;
  std::optional<std::uint64_t> bandit_seed;
  std::string bandit_procedure, bandit_out;
  int bandit_threads = 0;
  bandit->add_option("--arms", bandit_cfg.arms, "number of arms K (default 500)")
      ->check(CLI::PositiveNumber);
  bandit->add_option("--budget", bandit_cfg.budget, "max pulls per arm n (default 50)")
      ->check(CLI::PositiveNumber);
  bandit->add_option("--theta", bandit_cfg.theta, "non-null probability scale in [0,1] (default 0.5)")
      ->check(CLI::Range(0.0, 1.0));
  bandit->add_option("--mu", bandit_cfg.mu, "mean signal strength (default 1)")
      ->check(CLI::PositiveNumber);
  bandit->add_option("--alpha", bandit_cfg.alpha, "target FDR level in (0,1) (default 0.05)")
      ->check(CLI::Range(0.0, 1.0));
  bandit->add_option("--trials", bandit_cfg.trials, "Monte-Carlo trials (default 500)")
      ->check(CLI::PositiveNumber);
  bandit->add_option("--seed", bandit_seed, "RNG seed (drawn and echoed when absent)");
  bandit->add_option("--procedure", bandit_procedure, "restrict output to e-BH|BH|BY|cBH")
      ->check(CLI::IsMember({"e-BH", "BH", "BY", "cBH"}));
  bandit->add_option("--threads", bandit_threads, "worker threads (default: logical CPUs)");
  bandit->add_option("--out", bandit_out, "output CSV path (default: stdout)");

  // --- simulate-ztest ---
  auto* ztest = app.add_subcommand("simulate-ztest",
                                   "Correlated z-test study (one row per method and level)");
  ebh::ZTestConfig ztest_cfg;
  std::optional<std::uint64_t> ztest_seed;
  std::vector<double> ztest_alphas;
  std::vector<std::string> ztest_methods;
  std::string ztest_corr = "equi", ztest_mode = "exact", ztest_out;
  int ztest_threads = 0;
  ztest->add_option("--k", ztest_cfg.k, "number of hypotheses (default 1000)")
      ->check(CLI::PositiveNumber);
  ztest->add_option("--k0", ztest_cfg.k0, "number of true nulls (default 800)")
      ->check(CLI::NonNegativeNumber);
  ztest->add_option("--delta", ztest_cfg.delta, "alternative mean shift (default -3)");
  ztest->add_option("--correlation", ztest_corr, "equi|negex|banded (default equi)")
      ->check(CLI::IsMember({"equi", "negex", "banded"}));
  ztest->add_option("--rho", ztest_cfg.rho, "equicorrelation in [0,1] (default 0)")
      ->check(CLI::Range(0.0, 1.0));
  ztest->add_option("--alpha", ztest_alphas, "FDR level, repeatable (default 0.1 0.05 0.02)")
      ->check(CLI::Range(0.0, 1.0));
  ztest->add_option("--method", ztest_methods,
                    "bh|ebh-prds|by|ebh-ad|base-ebh, repeatable (default: all)")
      ->check(CLI::IsMember({"bh", "ebh-prds", "by", "ebh-ad", "base-ebh"}));
  ztest->add_option("--mode", ztest_mode, "boosting criteria: exact|conservative (default exact)")
      ->check(CLI::IsMember({"exact", "conservative"}));
  ztest->add_option("--trials", ztest_cfg.trials, "Monte-Carlo trials (default 1000)")
      ->check(CLI::PositiveNumber);
  ztest->add_option("--seed", ztest_seed, "RNG seed (drawn and echoed when absent)");
  ztest->add_option("--threads", ztest_threads, "worker threads (default: logical CPUs)");
  ztest->add_option("--out", ztest_out, "output CSV path (default: stdout)");

  // --- analyze-prices ---
  auto* prices = app.add_subcommand("analyze-prices",
                                    "Wealth-process evidence and selection from a price CSV");
  std::string prices_file, prices_out, prices_ids_out;
  double prices_lambda = 0.5;
  std::vector<double> prices_alphas;
  std::vector<std::string> prices_universes;
  prices->add_option("file", prices_file, "price CSV: asset_id,rank,<period>...")->required();
  prices->add_option("--lambda", prices_lambda, "rebalanced fraction in [0,1] (default 0.5)")
      ->check(CLI::Range(0.0, 1.0));
  prices->add_option("--alpha", prices_alphas, "FDR level, repeatable (default 0.05 0.10)")
      ->check(CLI::Range(0.0, 1.0));
  prices->add_option("--universe", prices_universes,
                     "top-N by rank or 'all', repeatable (default all)");
  prices->add_option("--out", prices_out, "output CSV path (default: stdout)");
  prices->add_option("--ids-out", prices_ids_out, "selected-ids JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(test)) {
      return run_test(test_file, test_procedure, test_alpha, test_kind, test_weights, test_select,
                      test_levels, test_out);
    }
    if (app.got_subcommand(boost)) {
      return run_boost(boost_model, boost_alpha, boost_k, boost_dependence, boost_mode, boost_out);
    }
    if (app.got_subcommand(bandit)) {
      bandit_cfg.seed = resolve_seed(bandit_seed);
      return run_simulate_bandit(bandit_cfg, bandit_procedure, bandit_threads, bandit_out);
    }
    if (app.got_subcommand(ztest)) {
      ztest_cfg.seed = resolve_seed(ztest_seed);
      if (!ztest_alphas.empty()) ztest_cfg.alphas = ztest_alphas;
      if (ztest_corr == "equi") ztest_cfg.correlation = ebh::CorrelationKind::Equicorrelated;
      if (ztest_corr == "negex") ztest_cfg.correlation = ebh::CorrelationKind::NegExchangeable;
      if (ztest_corr == "banded") ztest_cfg.correlation = ebh::CorrelationKind::Banded;
      ztest_cfg.boost_mode =
          ztest_mode == "exact" ? ebh::BoostMode::Exact : ebh::BoostMode::Conservative;
      if (!ztest_methods.empty()) {
        ztest_cfg.methods.clear();
        for (const std::string& m : ztest_methods) {
          if (m == "bh") ztest_cfg.methods.push_back(ebh::ZTestMethod::BH);
          if (m == "ebh-prds") ztest_cfg.methods.push_back(ebh::ZTestMethod::EbhPrds);
          if (m == "by") ztest_cfg.methods.push_back(ebh::ZTestMethod::BY);
          if (m == "ebh-ad") ztest_cfg.methods.push_back(ebh::ZTestMethod::EbhAd);
          if (m == "base-ebh") ztest_cfg.methods.push_back(ebh::ZTestMethod::BaseEbh);
        }
      }
      return run_simulate_ztest(ztest_cfg, ztest_threads, ztest_out);
    }
    if (app.got_subcommand(prices)) {
      if (prices_alphas.empty()) prices_alphas = {0.05, 0.10};
      if (prices_universes.empty()) prices_universes = {"all"};
      return run_analyze_prices(prices_file, prices_lambda, prices_alphas, prices_universes,
                                prices_out, prices_ids_out);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

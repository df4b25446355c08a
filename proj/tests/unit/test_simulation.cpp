#include <doctest.h>

#include <ebh/bandit.hpp>
#include <ebh/math.hpp>
#include <ebh/procedures.hpp>
#include <ebh/rng.hpp>
#include <ebh/sequential.hpp>
#include <ebh/ztest.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

using namespace ebh;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int direct_step_up_count(std::vector<double> values, double level) {
  const int k = static_cast<int>(values.size());
  std::sort(values.begin(), values.end(), std::greater<>());
  int best = 0;
  for (int m = 1; m <= k; ++m) {
    if (values[static_cast<std::size_t>(m - 1)] >= static_cast<double>(k) / (level * m)) best = m;
  }
  return best;
}

int engine_count(const std::vector<double>& evidence, double level) {
  return e_bh(EvidenceVector::e_values(evidence), level).k_star;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

}  // namespace

TEST_CASE("sequential processes: worked values") {
  SUBCASE("running product") {
    CHECK(product_e_process({}) == 1.0);
    CHECK(product_e_process(std::vector<double>{2.0, 0.5}) == 1.0);
    CHECK(product_e_process(std::vector<double>{1.0, 1.0, 1.0}) == 1.0);
    CHECK(product_e_process(std::vector<double>{3.0, 2.0}) == 6.0);
  }
  SUBCASE("anytime-valid p") {
    CHECK(ville_p_process({}) == 1.0);
    CHECK(ville_p_process(std::vector<double>{4.0}) == 0.25);
    // The running max keeps the best level even after the process falls back.
    CHECK(ville_p_process(std::vector<double>{4.0, 0.1}) == 0.25);
  }
  SUBCASE("self-normalized exponential") {
    CHECK(eb_e_process(std::vector<double>{1.0, 1.0}, 0.7) == 1.0);
    CHECK(eb_e_process(std::vector<double>{5.0, 0.2}, 0.0) == 1.0);
    // Single step at x=2, lambda=1/2: exp(1 + log(1/2)) = e/2.
    CHECK(eb_e_process(std::vector<double>{2.0}, 0.5) ==
          doctest::Approx(1.35914091422952).epsilon(1e-13));
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(eb_e_process(std::vector<double>{1.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(eb_e_process(std::vector<double>{1.0}, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(product_e_process(std::vector<double>{-1.0}), std::invalid_argument);
    CHECK_THROWS_AS(ville_p_process(std::vector<double>{2.0, -0.5}), std::invalid_argument);
    CHECK_THROWS_AS(eb_e_process(std::vector<double>{-2.0}, 0.5), std::invalid_argument);
  }
}

TEST_CASE("sequential processes: properties") {
  Rng rng(314);
  SUBCASE("anytime-valid p is nonincreasing in the prefix and bounded") {
    for (int t = 0; t < 50; ++t) {
      std::vector<double> x;
      double prev = 1.0;
      for (int i = 0; i < 20; ++i) {
        x.push_back(rng.exponential(1.0));
        const double p = ville_p_process(x);
        CHECK(p <= prev + 1e-15);
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
        prev = p;
      }
    }
  }
  SUBCASE("product of unit-mean rewards has unit mean") {
    const int trials = 100000, steps = 5;
    double sum = 0.0;
    for (int t = 0; t < trials; ++t) {
      std::vector<double> x(steps);
      for (auto& v : x) v = rng.exponential(1.0);
      sum += product_e_process(x);
    }
    // Var of a 5-step product of Exp(1) factors is 2^5 - 1.
    const double se = std::sqrt(31.0 / trials);
    CHECK(std::abs(sum / trials - 1.0) <= 4.0 * se);
  }
  SUBCASE("self-normalized process stays positive and finite") {
    for (int t = 0; t < 50; ++t) {
      std::vector<double> x(12);
      for (auto& v : x) v = rng.exponential(1.0);
      const double e = eb_e_process(x, 0.4);
      CHECK(e > 0.0);
      CHECK(std::isfinite(e));
    }
  }
}

TEST_CASE("StepUpCounter matches direct recomputation") {
  Rng rng(2718);
  for (int k : {1, 2, 5, 17, 40}) {
    for (int rep = 0; rep < 60; ++rep) {
      const double level = 0.02 + 0.3 * rng.uniform();
      std::vector<double> fixed(static_cast<std::size_t>(k - 1));
      for (auto& v : fixed) {
        const double u = rng.uniform();
        v = u < 0.3 ? 1.0 : (u < 0.6 ? rng.exponential(2.0) : k * rng.exponential(30.0));
      }
      StepUpCounter counter(fixed, k, level);

      auto query = [&](double x) {
        std::vector<double> all = fixed;
        all.push_back(x);
        CHECK(counter.count_with(x) == direct_step_up_count(all, level));
      };
      query(0.0);
      query(1.0);
      query(kInf);
      for (int q = 0; q < 8; ++q) query(rng.exponential(60.0));

      // Mutate a few fixed entries and re-verify.
      for (int m = 0; m < 4 && k > 1; ++m) {
        const auto idx = static_cast<std::size_t>(static_cast<int>(rng.uniform() * (k - 1)));
        const double next = rng.exponential(40.0);
        counter.replace(fixed[idx], next);
        fixed[idx] = next;
        query(rng.exponential(60.0));
        query(1.0);
      }
    }
  }

  SUBCASE("replace of an absent value throws") {
    StepUpCounter counter({4.0, 2.0}, 3, 0.1);
    CHECK_THROWS_AS(counter.replace(7.0, 1.0), std::invalid_argument);
  }
  SUBCASE("needs exactly K-1 fixed entries") {
    CHECK_THROWS_AS(StepUpCounter({1.0, 2.0}, 2, 0.1), std::invalid_argument);
  }
}

TEST_CASE("bandit stopping rule replays against direct recomputation") {
  BanditConfig cfg;
  cfg.arms = 60;
  cfg.budget = 12;
  cfg.theta = 0.6;
  cfg.alpha = 0.1;
  for (auto proc :
       {BanditProcedure::EBH, BanditProcedure::BH, BanditProcedure::BY, BanditProcedure::CBH}) {
    for (int trial = 0; trial < 8; ++trial) {
      Rng rng = Rng::for_trial(424, static_cast<std::uint64_t>(trial));
      const BanditTrialData data = draw_bandit_data(cfg, rng);
      const BanditRunDetail detail = run_bandit_detailed(data, proc, cfg.alpha);
      REQUIRE(detail.pulls.size() == static_cast<std::size_t>(cfg.arms));
      REQUIRE(detail.evidence.size() == static_cast<std::size_t>(cfg.arms));

      // An arm that stopped before its budget must have created a discovery:
      // the step-up count with its evidence placed in the slot exceeds the
      // count with an idle slot.
      for (int a = 0; a < cfg.arms; ++a) {
        CHECK(detail.pulls[static_cast<std::size_t>(a)] >= 1);
        CHECK(detail.pulls[static_cast<std::size_t>(a)] <= cfg.budget);
        if (detail.pulls[static_cast<std::size_t>(a)] >= cfg.budget) continue;
        std::vector<double> with(detail.evidence.begin(), detail.evidence.begin() + a + 1);
        with.resize(static_cast<std::size_t>(cfg.arms), 1.0);
        std::vector<double> without = with;
        without[static_cast<std::size_t>(a)] = 1.0;
        CHECK(engine_count(with, detail.level) > engine_count(without, detail.level));
      }

      // Metrics recompute exactly from the detailed record.
      const TrialMetrics m = run_bandit_on_data(data, proc, cfg.alpha);
      CHECK(m.rejections == static_cast<double>(detail.outcome.rejected.size()));
      double td = 0.0;
      for (int idx : detail.outcome.rejected) {
        if (data.non_null[static_cast<std::size_t>(idx - 1)]) td += 1.0;
      }
      CHECK(m.true_discoveries == td);
      CHECK(m.fdp_pct == doctest::Approx(100.0 * (m.rejections - td) /
                                         std::max(m.rejections, 1.0)).epsilon(1e-12));
      const double total_pulls =
          std::accumulate(detail.pulls.begin(), detail.pulls.end(), 0.0);
      const double budget_total = static_cast<double>(cfg.arms) * cfg.budget;
      CHECK(m.unused_budget_pct ==
            doctest::Approx(100.0 * (budget_total - total_pulls) / budget_total).epsilon(1e-12));
    }
  }
}

TEST_CASE("bandit study is deterministic and thread-independent") {
  BanditConfig cfg;
  cfg.arms = 60;
  cfg.budget = 8;
  cfg.trials = 24;
  cfg.seed = 77;
  const auto rows1 = run_bandit_study(cfg, 1);
  const auto rows4 = run_bandit_study(cfg, 4);
  REQUIRE(rows1.size() == 4);
  REQUIRE(rows4.size() == rows1.size());
  for (std::size_t i = 0; i < rows1.size(); ++i) {
    CHECK(rows1[i].procedure == rows4[i].procedure);
    CHECK(rows1[i].trials == rows4[i].trials);
    CHECK(rows1[i].mean.rejections == rows4[i].mean.rejections);
    CHECK(rows1[i].mean.true_discoveries == rows4[i].mean.true_discoveries);
    CHECK(rows1[i].mean.fdp_pct == rows4[i].mean.fdp_pct);
    CHECK(rows1[i].mean.unused_budget_pct == rows4[i].mean.unused_budget_pct);
  }

  // A single-trial study equals the directly replayed trial.
  BanditConfig one = cfg;
  one.trials = 1;
  one.seed = 5;
  const auto rows = run_bandit_study(one, 2);
  for (const auto& row : rows) {
    Rng rng = Rng::for_trial(one.seed, 0);
    const BanditTrialData data = draw_bandit_data(one, rng);
    const TrialMetrics m = run_bandit_on_data(data, row.procedure, one.alpha);
    CHECK(row.mean.rejections == m.rejections);
    CHECK(row.mean.true_discoveries == m.true_discoveries);
    CHECK(row.mean.fdp_pct == m.fdp_pct);
    CHECK(row.mean.unused_budget_pct == m.unused_budget_pct);
  }
}

TEST_CASE("bandit study: low-budget screening favors the product process") {
  BanditConfig cfg;
  cfg.arms = 500;
  cfg.budget = 10;
  cfg.trials = 200;
  cfg.seed = 12;
  const auto rows = run_bandit_study(cfg, 0);
  double ebh_r = -1.0, by_r = -1.0;
  for (const auto& row : rows) {
    if (row.procedure == BanditProcedure::EBH) ebh_r = row.mean.rejections;
    if (row.procedure == BanditProcedure::BY) by_r = row.mean.rejections;
  }
  // Long-run means are about 47.7 and 38.4.
  CHECK(ebh_r == doctest::Approx(47.7).epsilon(0.15));
  CHECK(by_r == doctest::Approx(38.4).epsilon(0.15));
  CHECK(ebh_r > by_r);
}

TEST_CASE("bandit config validation") {
  BanditConfig ok;
  CHECK_NOTHROW(ok.validate());
  BanditConfig all_null = ok;
  all_null.theta = 0.0;
  CHECK_NOTHROW(all_null.validate());
  all_null.theta = 1.0;
  CHECK_NOTHROW(all_null.validate());

  BanditConfig bad = ok;
  bad.theta = 1.0001;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.arms = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.budget = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.mu = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.alpha = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.trials = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("correlated gaussian sampler") {
  ZTestConfig cfg;
  cfg.k = 10;
  cfg.k0 = 10;  // all null: every entry is a correlation probe
  cfg.trials = 1;
  const int draws = 4000;

  auto collect = [&](int index) {
    Rng rng(909);
    std::vector<double> out;
    out.reserve(draws);
    for (int t = 0; t < draws; ++t) out.push_back(sample_correlated_gaussians(cfg, rng)[index]);
    return out;
  };
  auto collect_pair = [&](int i, int j, std::vector<double>& a, std::vector<double>& b) {
    Rng rng(909);
    for (int t = 0; t < draws; ++t) {
      const auto x = sample_correlated_gaussians(cfg, rng);
      a.push_back(x[static_cast<std::size_t>(i)]);
      b.push_back(x[static_cast<std::size_t>(j)]);
    }
  };
  const double band = 3.0 / std::sqrt(static_cast<double>(draws));

  SUBCASE("independent") {
    cfg.correlation = CorrelationKind::Equicorrelated;
    cfg.rho = 0.0;
    std::vector<double> a, b;
    collect_pair(2, 7, a, b);
    CHECK(std::abs(pearson(a, b)) <= band);
  }
  SUBCASE("equicorrelated") {
    cfg.correlation = CorrelationKind::Equicorrelated;
    cfg.rho = 0.5;
    std::vector<double> a, b;
    collect_pair(0, 9, a, b);
    CHECK(pearson(a, b) == doctest::Approx(0.5).epsilon(0.15));
    const auto x = collect(4);
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / draws;
    CHECK(std::abs(mean) <= band);
  }
  SUBCASE("negatively exchangeable") {
    cfg.correlation = CorrelationKind::NegExchangeable;
    std::vector<double> a, b;
    collect_pair(1, 6, a, b);
    CHECK(pearson(a, b) == doctest::Approx(-1.0 / 9.0).epsilon(0.5));
  }
  SUBCASE("banded") {
    cfg.correlation = CorrelationKind::Banded;
    std::vector<double> a, b, c;
    {
      Rng rng(909);
      for (int t = 0; t < draws; ++t) {
        const auto x = sample_correlated_gaussians(cfg, rng);
        a.push_back(x[3]);
        b.push_back(x[4]);
        c.push_back(x[5]);
      }
    }
    CHECK(pearson(a, b) == doctest::Approx(-0.5).epsilon(0.15));
    CHECK(std::abs(pearson(a, c)) <= band);
  }
  SUBCASE("alternatives shifted by delta") {
    cfg.k0 = 7;
    cfg.delta = -3.0;
    cfg.correlation = CorrelationKind::Equicorrelated;
    cfg.rho = 0.0;
    const auto alt = collect(0);   // first K-K0 entries are alternatives
    const auto nul = collect(5);
    const double alt_mean = std::accumulate(alt.begin(), alt.end(), 0.0) / draws;
    const double nul_mean = std::accumulate(nul.begin(), nul.end(), 0.0) / draws;
    CHECK(alt_mean == doctest::Approx(-3.0).epsilon(0.05));
    CHECK(std::abs(nul_mean) <= band);
  }
}

TEST_CASE("ztest study is deterministic and thread-independent") {
  ZTestConfig cfg;
  cfg.k = 100;
  cfg.k0 = 80;
  cfg.trials = 40;
  cfg.alphas = {0.05};
  cfg.methods = {ZTestMethod::BH, ZTestMethod::EbhPrds, ZTestMethod::BaseEbh};
  cfg.seed = 3;
  const auto c1 = run_ztest_study(cfg, 1);
  const auto c4 = run_ztest_study(cfg, 4);
  REQUIRE(c1.size() == c4.size());
  REQUIRE(c1.size() == cfg.alphas.size() * cfg.methods.size());
  for (std::size_t i = 0; i < c1.size(); ++i) {
    CHECK(c1[i].method == c4[i].method);
    CHECK(c1[i].alpha == c4[i].alpha);
    CHECK(c1[i].mean_rejections == c4[i].mean_rejections);
    CHECK(c1[i].mean_fdp_pct == c4[i].mean_fdp_pct);
  }
}

TEST_CASE("boosted favorable-dependence rejections nest inside the p-value step-up") {
  // With the K-aware grid criterion, every discovery the boosted e-value
  // procedure makes is also made by the p-value step-up on the same draw.
  const int k = 200, k0 = 160, trials = 200;
  const double alpha = 0.05, delta = -3.0;
  ZTestConfig cfg;
  cfg.k = k;
  cfg.k0 = k0;
  cfg.delta = delta;
  cfg.correlation = CorrelationKind::Equicorrelated;
  cfg.rho = 0.5;
  const double b =
      boost_factor(NullModel::lognormal_lr(std::abs(delta)), alpha, k, Dependence::Prds,
                   BoostMode::Exact)
          .b;
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::for_trial(88, static_cast<std::uint64_t>(t));
    const auto x = sample_correlated_gaussians(cfg, rng);
    std::vector<double> p(x.size()), e(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      p[i] = norm_cdf(x[i]);
      e[i] = b * std::exp(delta * x[i] - delta * delta / 2.0);
    }
    const auto e_out = e_bh(EvidenceVector::e_values(e), alpha);
    const auto p_out = bh(EvidenceVector::p_values(p), alpha);
    CHECK(std::includes(p_out.rejected.begin(), p_out.rejected.end(), e_out.rejected.begin(),
                        e_out.rejected.end()));
  }
}

TEST_CASE("ztest config validation") {
  ZTestConfig ok;
  CHECK_NOTHROW(ok.validate());

  ZTestConfig bad = ok;
  bad.k0 = bad.k + 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.k0 = bad.k;  // all-null is legal
  CHECK_NOTHROW(bad.validate());
  bad = ok;
  bad.delta = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.rho = 1.0;  // perfectly correlated is degenerate but samplable
  CHECK_NOTHROW(bad.validate());
  bad = ok;
  bad.rho = 1.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.rho = -0.1;  // common-factor construction needs nonnegative rho
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.correlation = CorrelationKind::Banded;
  bad.rho = 0.9;  // rho is ignored outside the equicorrelated family
  CHECK_NOTHROW(bad.validate());
  bad = ok;
  bad.alphas = {};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.alphas = {0.05, 1.0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.methods = {};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.trials = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.correlation = CorrelationKind::NegExchangeable;
  bad.k = 1;
  bad.k0 = 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

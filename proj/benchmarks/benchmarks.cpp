#include "ebh/bandit.hpp"
#include "ebh/boosting.hpp"
#include "ebh/evidence.hpp"
#include "ebh/null_model.hpp"
#include "ebh/procedures.hpp"
#include "ebh/rng.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

std::vector<double> random_e_values(int k, std::uint64_t seed) {
  ebh::Rng rng(seed);
  std::vector<double> e(static_cast<std::size_t>(k));
  for (double& v : e) v = rng.exponential(1.0) * 40.0 * rng.uniform();
  return e;
}

void BM_EBh(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto e = ebh::EvidenceVector::e_values(random_e_values(k, 7));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ebh::e_bh(e, 0.05));
  }
  state.SetComplexityN(k);
}
BENCHMARK(BM_EBh)->Range(64, 1 << 17)->Complexity(benchmark::oNLogN);

void BM_Bh(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  ebh::Rng rng(11);
  std::vector<double> p(static_cast<std::size_t>(k));
  for (double& v : p) v = rng.uniform();
  const auto pv = ebh::EvidenceVector::p_values(std::move(p));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ebh::bh(pv, 0.05));
  }
}
BENCHMARK(BM_Bh)->Range(64, 1 << 17);

void BM_BoostFactorCalibrator(benchmark::State& state) {
  const auto model = ebh::NullModel::calibrator_null(0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ebh::boost_factor(model, 0.05, 1000, ebh::Dependence::Arbitrary, ebh::BoostMode::Exact));
  }
}
BENCHMARK(BM_BoostFactorCalibrator);

void BM_BoostFactorLogNormalZBar(benchmark::State& state) {
  const auto model = ebh::NullModel::lognormal_lr(3.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ebh::boost_factor(model, 0.05, std::nullopt, ebh::Dependence::Prds,
                                               ebh::BoostMode::Conservative));
  }
}
BENCHMARK(BM_BoostFactorLogNormalZBar);

void BM_StepUpCounterQuery(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  auto fixed = random_e_values(k - 1, 3);
  ebh::StepUpCounter counter(std::move(fixed), k, 0.05);
  ebh::Rng rng(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(counter.count_with(rng.exponential(1.0) * 30.0));
  }
}
BENCHMARK(BM_StepUpCounterQuery)->Range(64, 1 << 14);

void BM_BanditTrial(benchmark::State& state) {
  ebh::BanditConfig cfg;
  cfg.arms = static_cast<int>(state.range(0));
  cfg.budget = 50;
  std::uint64_t trial = 0;
  for (auto _ : state) {
    ebh::Rng rng = ebh::Rng::for_trial(1, trial++);
    benchmark::DoNotOptimize(ebh::run_bandit_trial(cfg, rng));
  }
}
BENCHMARK(BM_BanditTrial)->Arg(100)->Arg(500);

}  // namespace

BENCHMARK_MAIN();

#pragma once

#include "ebh/boosting.hpp"
#include "ebh/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ebh {

enum class CorrelationKind { Equicorrelated, NegExchangeable, Banded };

enum class ZTestMethod { BH, EbhPrds, BY, EbhAd, BaseEbh };

std::string to_string(ZTestMethod m);

// Correlated z-test study: K test statistics, the first K-K0 shifted by delta
// (the alternatives), tested by p-value procedures on Phi(x) and e-value
// procedures on the likelihood ratio exp(delta*x - delta^2/2).
struct ZTestConfig {
  int k = 1000;
  int k0 = 800;            // number of true nulls
  double delta = -3.0;     // alternative mean shift; also sets the e-value scale
  CorrelationKind correlation = CorrelationKind::Equicorrelated;
  double rho = 0.0;        // pairwise correlation (Equicorrelated only)
  std::vector<double> alphas = {0.10, 0.05, 0.02};
  std::vector<ZTestMethod> methods = {ZTestMethod::BH, ZTestMethod::EbhPrds, ZTestMethod::BY,
                                      ZTestMethod::EbhAd, ZTestMethod::BaseEbh};
  // Criterion flavor for both boosted methods: Exact uses the K-aware
  // truncation/grid criteria, Conservative the K-free bounds.
  BoostMode boost_mode = BoostMode::Exact;
  int trials = 1000;
  std::uint64_t seed = 1;

  void validate() const;
};

// One draw of the K statistics, alternatives first, unit marginal variances:
//   Equicorrelated:  sqrt(rho)*Z0 + sqrt(1-rho)*Z_k
//   NegExchangeable: (Z_k - mean(Z))/sqrt(1 - 1/K), pairwise rho = -1/(K-1)
//   Banded:          (w_k - w_{k+1})/sqrt(2), adjacent rho = -1/2, else 0
std::vector<double> sample_correlated_gaussians(const ZTestConfig& cfg, Rng& rng);

struct ZTestCell {
  ZTestMethod method;
  double alpha = 0.0;
  double mean_rejections = 0.0;
  double mean_fdp_pct = 0.0;
};

// Averages rejections and false discovery proportion over cfg.trials for every
// configured (method, alpha); boosting factors are computed once per cell from
// the lognormal null with scale |delta|. threads <= 0 picks the hardware
// count; results do not depend on the thread count.
std::vector<ZTestCell> run_ztest_study(const ZTestConfig& cfg, int threads = 0);

}  // namespace ebh

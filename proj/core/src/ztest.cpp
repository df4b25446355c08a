#include "ebh/ztest.hpp"

#include "ebh/evidence.hpp"
#include "ebh/math.hpp"
#include "ebh/procedures.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace ebh {

std::string to_string(ZTestMethod m) {
  switch (m) {
    case ZTestMethod::BH: return "BH";
    case ZTestMethod::EbhPrds: return "e-BH-PRDS";
    case ZTestMethod::BY: return "BY";
    case ZTestMethod::EbhAd: return "e-BH-AD";
    case ZTestMethod::BaseEbh: return "base-e-BH";
  }
  return "?";
}

void ZTestConfig::validate() const {
  if (k < 1) throw std::invalid_argument("ztest config: K must be >= 1");
  if (k0 < 0 || k0 > k) throw std::invalid_argument("ztest config: K0 must lie in [0, K]");
  if (!std::isfinite(delta) || delta == 0.0) {
    throw std::invalid_argument("ztest config: delta must be finite and nonzero");
  }
  if (alphas.empty() || methods.empty()) {
    throw std::invalid_argument("ztest config: need at least one alpha and one method");
  }
  for (double a : alphas) {
    if (!(a > 0.0) || !(a < 1.0)) {
      throw std::invalid_argument("ztest config: alpha must lie in (0, 1)");
    }
  }
  if (trials < 1) throw std::invalid_argument("ztest config: trials must be >= 1");
  switch (correlation) {
    case CorrelationKind::Equicorrelated:
      if (!(rho >= 0.0) || !(rho <= 1.0)) {
        throw std::invalid_argument(
            "ztest config: equicorrelated rho must lie in [0, 1] (common-factor construction)");
      }
      break;
    case CorrelationKind::NegExchangeable:
      if (k < 2) throw std::invalid_argument("ztest config: NegExchangeable needs K >= 2");
      break;
    case CorrelationKind::Banded:
      break;
  }
}

std::vector<double> sample_correlated_gaussians(const ZTestConfig& cfg, Rng& rng) {
  cfg.validate();
  const int k = cfg.k;
  std::vector<double> x(static_cast<std::size_t>(k));
  switch (cfg.correlation) {
    case CorrelationKind::Equicorrelated: {
      if (cfg.rho == 0.0) {
        for (double& v : x) v = rng.normal();
      } else {
        const double z0 = rng.normal();
        const double a = std::sqrt(cfg.rho);
        const double b = std::sqrt(1.0 - cfg.rho);
        for (double& v : x) v = a * z0 + b * rng.normal();
      }
      break;
    }
    case CorrelationKind::NegExchangeable: {
      double sum = 0.0;
      for (double& v : x) {
        v = rng.normal();
        sum += v;
      }
      const double mean = sum / k;
      const double scale = 1.0 / std::sqrt(1.0 - 1.0 / k);
      for (double& v : x) v = (v - mean) * scale;
      break;
    }
    case CorrelationKind::Banded: {
      double prev = rng.normal();
      for (double& v : x) {
        const double next = rng.normal();
        v = (prev - next) / std::numbers::sqrt2;
        prev = next;
      }
      break;
    }
  }
  for (int i = 0; i < k - cfg.k0; ++i) x[static_cast<std::size_t>(i)] += cfg.delta;
  return x;
}

std::vector<ZTestCell> run_ztest_study(const ZTestConfig& cfg, int threads) {
  cfg.validate();
  const int k = cfg.k;
  const int n_cells = static_cast<int>(cfg.methods.size() * cfg.alphas.size());

  // Boost factors depend only on (alpha, criterion); the null e-value is
  // lognormal with scale |delta| regardless of delta's sign.
  const NullModel null = NullModel::lognormal_lr(std::abs(cfg.delta));
  std::vector<double> ad_factor(cfg.alphas.size(), 1.0);
  std::vector<double> prds_factor(cfg.alphas.size(), 1.0);
  for (std::size_t a = 0; a < cfg.alphas.size(); ++a) {
    const double alpha = cfg.alphas[a];
    bool need_ad = false, need_prds = false;
    for (ZTestMethod m : cfg.methods) {
      need_ad |= m == ZTestMethod::EbhAd;
      need_prds |= m == ZTestMethod::EbhPrds;
    }
    if (need_ad) {
      ad_factor[a] = boost_factor(null, alpha, k, Dependence::Arbitrary, cfg.boost_mode).b;
    }
    if (need_prds) {
      prds_factor[a] = boost_factor(null, alpha, k, Dependence::Prds, cfg.boost_mode).b;
    }
  }

  struct CellSum {
    double rejections = 0.0;
    double fdp_pct = 0.0;
  };
  std::vector<std::vector<CellSum>> per_trial(
      static_cast<std::size_t>(cfg.trials),
      std::vector<CellSum>(static_cast<std::size_t>(n_cells)));

  auto run_trial = [&](int t) {
    Rng rng = Rng::for_trial(cfg.seed, static_cast<std::uint64_t>(t));
    const std::vector<double> x = sample_correlated_gaussians(cfg, rng);
    std::vector<double> p(x.size()), e(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      p[i] = norm_cdf(x[i]);
      e[i] = std::exp(cfg.delta * x[i] - cfg.delta * cfg.delta / 2.0);
    }
    const EvidenceVector pv = EvidenceVector::p_values(std::move(p));
    const EvidenceVector ev = EvidenceVector::e_values(std::move(e));

    int cell = 0;
    for (ZTestMethod m : cfg.methods) {
      for (std::size_t a = 0; a < cfg.alphas.size(); ++a, ++cell) {
        const double alpha = cfg.alphas[a];
        TestOutcome out;
        switch (m) {
          case ZTestMethod::BH: out = bh(pv, alpha); break;
          case ZTestMethod::BY: out = by(pv, alpha); break;
          case ZTestMethod::BaseEbh: out = e_bh(ev, alpha); break;
          case ZTestMethod::EbhAd:
          case ZTestMethod::EbhPrds: {
            const double b = m == ZTestMethod::EbhAd ? ad_factor[a] : prds_factor[a];
            std::vector<double> boosted(ev.values());
            for (double& v : boosted) v *= b;
            out = e_bh(EvidenceVector::e_values(std::move(boosted)), alpha);
            break;
          }
        }
        const int r = static_cast<int>(out.rejected.size());
        int false_disc = 0;
        for (int idx : out.rejected) {
          if (idx > k - cfg.k0) ++false_disc;  // nulls sit after the alternatives
        }
        per_trial[static_cast<std::size_t>(t)][static_cast<std::size_t>(cell)] = {
            static_cast<double>(r), 100.0 * false_disc / std::max(r, 1)};
      }
    }
  };

  int n_threads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::clamp(n_threads, 1, cfg.trials);
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int t = next.fetch_add(1);
      if (t >= cfg.trials) return;
      run_trial(t);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::vector<ZTestCell> cells;
  cells.reserve(static_cast<std::size_t>(n_cells));
  int cell = 0;
  for (ZTestMethod m : cfg.methods) {
    for (std::size_t a = 0; a < cfg.alphas.size(); ++a, ++cell) {
      ZTestCell out;
      out.method = m;
      out.alpha = cfg.alphas[a];
      for (int t = 0; t < cfg.trials; ++t) {
        const CellSum& s = per_trial[static_cast<std::size_t>(t)][static_cast<std::size_t>(cell)];
        out.mean_rejections += s.rejections;
        out.mean_fdp_pct += s.fdp_pct;
      }
      out.mean_rejections /= cfg.trials;
      out.mean_fdp_pct /= cfg.trials;
      cells.push_back(out);
    }
  }
  return cells;
}

}  // namespace ebh

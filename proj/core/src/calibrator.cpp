#include "ebh/calibrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace ebh {

namespace {
constexpr int kQuadraturePoints = 100000;
constexpr double kIntegralTolerance = 1e-6;
}  // namespace

Calibrator Calibrator::power(double lambda) {
  if (!(lambda > 0.0) || !(lambda < 1.0))
    throw std::invalid_argument("Calibrator::power: lambda must lie in (0,1)");
  Calibrator c;
  c.family_ = Family::Power;
  c.lambda_ = lambda;
  if (c.integral() > 1.0 + kIntegralTolerance)
    throw std::invalid_argument("Calibrator::power: integral validation failed");
  return c;
}

Calibrator Calibrator::table(std::vector<double> p, std::vector<double> f) {
  if (p.empty() || p.size() != f.size())
    throw std::invalid_argument("Calibrator::table: knot vectors must be nonempty and equal-sized");
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (std::isnan(p[i]) || std::isnan(f[i]))
      throw std::invalid_argument("Calibrator::table: NaN knot rejected");
    if (!(p[i] > 0.0) || p[i] > 1.0)
      throw std::invalid_argument("Calibrator::table: p knots must lie in (0,1]");
    if (f[i] < 0.0 || std::isinf(f[i]))
      throw std::invalid_argument("Calibrator::table: f knots must be finite and >= 0");
    if (i > 0) {
      if (p[i] <= p[i - 1])
        throw std::invalid_argument("Calibrator::table: p knots must be strictly increasing");
      if (f[i] > f[i - 1])
        throw std::invalid_argument("Calibrator::table: f knots must be nonincreasing");
    }
  }
  Calibrator c;
  c.family_ = Family::Table;
  c.knots_p_ = std::move(p);
  c.knots_f_ = std::move(f);
  if (c.integral() > 1.0 + kIntegralTolerance)
    throw std::invalid_argument("Calibrator::table: integral exceeds 1");
  return c;
}

double Calibrator::operator()(double p) const {
  if (std::isnan(p) || p < 0.0 || p > 1.0)
    throw std::invalid_argument("Calibrator: argument must lie in [0,1]");
  if (family_ == Family::Power) {
    if (p == 0.0) return std::numeric_limits<double>::infinity();
    return lambda_ * std::pow(p, lambda_ - 1.0);
  }
  if (p <= knots_p_.front()) return knots_f_.front();
  if (p > knots_p_.back()) return 0.0;
  auto it = std::lower_bound(knots_p_.begin(), knots_p_.end(), p);
  std::size_t hi = static_cast<std::size_t>(it - knots_p_.begin());
  std::size_t lo = hi - 1;
  double t = (p - knots_p_[lo]) / (knots_p_[hi] - knots_p_[lo]);
  return knots_f_[lo] + t * (knots_f_[hi] - knots_f_[lo]);
}

double Calibrator::integral() const {
  // Midpoint rule in u = log p; the substitution turns the integrable singularity
  // of the power family into a plain exponential. The lower cutoff is chosen so the
  // dropped tail mass is below 1e-9.
  double u0;
  if (family_ == Family::Power) {
    u0 = std::max(-700.0, -9.0 * std::log(10.0) / lambda_);
  } else {
    u0 = std::max(-700.0, std::log(1e-12 / (knots_f_.front() + 1.0)));
  }
  const double h = -u0 / kQuadraturePoints;
  double sum = 0.0;
  for (int i = 0; i < kQuadraturePoints; ++i) {
    const double u = u0 + (i + 0.5) * h;
    const double p = std::exp(u);
    sum += (*this)(p)*p;
  }
  return sum * h;
}

double e_to_p(double e) {
  if (std::isnan(e) || e < 0.0) throw std::invalid_argument("e_to_p: e must be >= 0");
  if (e == 0.0) return 1.0;
  return std::min(1.0, 1.0 / e);
}

EvidenceVector e_to_p(const EvidenceVector& e) {
  if (e.kind() != EvidenceKind::EValues)
    throw std::invalid_argument("e_to_p: expected an e-value vector");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(e.size()));
  for (double v : e.values()) out.push_back(e_to_p(v));
  return EvidenceVector::p_values(std::move(out));
}

EvidenceVector calibrate_p_to_e(const EvidenceVector& p, const Calibrator& f) {
  if (p.kind() != EvidenceKind::PValues)
    throw std::invalid_argument("calibrate_p_to_e: expected a p-value vector");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(p.size()));
  for (double v : p.values()) out.push_back(f(v));
  return EvidenceVector::e_values(std::move(out));
}

}  // namespace ebh

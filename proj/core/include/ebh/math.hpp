#pragma once

#include <vector>

namespace ebh {

// Standard normal CDF via erfc; absolute error below 1e-12 across the real line.
double norm_cdf(double x);

// Standard normal density.
double norm_pdf(double x);

// Inverse standard normal CDF on (0,1); returns -inf/+inf at 0/1, throws outside [0,1].
// Rational initial guess polished with Halley steps against norm_cdf.
double norm_quantile(double p);

// Partial harmonic sum l_K = sum_{k=1..K} 1/k, accumulated from the smallest term.
double harmonic_sum(int k);

// n points log-spaced on [lo, hi] inclusive; lo, hi > 0, n >= 2.
std::vector<double> log_spaced(double lo, double hi, int n);

}  // namespace ebh

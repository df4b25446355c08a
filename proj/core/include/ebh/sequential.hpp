#pragma once

#include <span>

namespace ebh {

// Running-product e-process for the null "mean reward <= 1": value after
// consuming x_1..x_j. Empty input gives the initial value 1.
double product_e_process(std::span<const double> x);

// Anytime-valid p-value: reciprocal of the running maximum of the product
// e-process, clamped to [0, 1]. Nonincreasing as observations accrue.
double ville_p_process(std::span<const double> x);

// Exponential self-normalized e-process:
//   prod_i exp(lambda*(x_i - 1) - psi(lambda)*(x_i - 1)^2),
// psi(lambda) = -lambda - log(1 - lambda), for lambda in [0, 1).
double eb_e_process(std::span<const double> x, double lambda);

}  // namespace ebh

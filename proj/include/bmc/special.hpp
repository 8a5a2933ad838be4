#pragma once

#include <span>
#include <vector>

namespace bmc {

// Natural log of the gamma function, x > 0.
double log_gamma(double x);

// log B(a, b) = lgamma(a) + lgamma(b) - lgamma(a + b).
double log_beta_fn(double a, double b);

// log C(n, k) for integer 0 <= k <= n.
double log_choose(double n, double k);

// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
// Series expansion for x < a + 1, continued fraction otherwise.
double regularized_gamma_p(double a, double x);

// Digamma (psi) function for x > 0.
double digamma(double x);

// Standard normal cdf.
double normal_cdf(double x);

// log(sum_i exp(v_i)); -inf entries are handled, empty input returns -inf.
double log_sum_exp(std::span<const double> values);

// Numerically stable mean of exp(v_i - shift) style summaries.
double log_mean_exp(std::span<const double> values);

}  // namespace bmc

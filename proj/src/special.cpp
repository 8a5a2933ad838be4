#include "bmc/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bmc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("log_gamma requires x > 0");
  }
  return std::lgamma(x);
}

double log_beta_fn(double a, double b) {
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double log_choose(double n, double k) {
  if (k < 0.0 || k > n) {
    throw std::domain_error("log_choose requires 0 <= k <= n");
  }
  return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

namespace {

// Series representation of P(a, x), converges fast for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 1000; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) {
      break;
    }
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x) = 1 - P(a, x), modified Lentz.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 1000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) {
      break;
    }
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  if (!(a > 0.0)) {
    throw std::domain_error("regularized_gamma_p requires a > 0");
  }
  if (x <= 0.0) {
    return 0.0;
  }
  if (x < a + 1.0) {
    return gamma_p_series(a, x);
  }
  return 1.0 - gamma_q_cf(a, x);
}

double digamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("digamma requires x > 0");
  }
  double result = 0.0;
  // Shift to the asymptotic regime, psi(x) = psi(x+1) - 1/x.
  while (x < 16.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  result += std::log(x) - 0.5 * inv -
            inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 / 240.0)));
  return result;
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double log_sum_exp(std::span<const double> values) {
  if (values.empty()) {
    return -kInf;
  }
  double max = -kInf;
  for (double v : values) {
    if (v > max) max = v;
  }
  if (max == -kInf) {
    return -kInf;
  }
  if (max == kInf) {
    return kInf;
  }
  double sum = 0.0;
  for (double v : values) {
    sum += std::exp(v - max);
  }
  return max + std::log(sum);
}

double log_mean_exp(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("log_mean_exp over empty input");
  }
  return log_sum_exp(values) - std::log(static_cast<double>(values.size()));
}

}  // namespace bmc

#include "bmc/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace bmc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.141592653589793238462643383279502884;

double simpson_rec(const std::function<double(double)>& f, double a, double m, double b,
                   double fa, double fm, double fb, double whole, double abs_tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * abs_tol) {
    return left + right + delta / 15.0;
  }
  return simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * abs_tol, depth - 1) +
         simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * abs_tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, int max_depth) {
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  double abs_tol = rel_tol * std::fabs(whole);
  if (abs_tol == 0.0) abs_tol = rel_tol;  // integrand may start flat at 0
  return simpson_rec(f, a, m, b, fa, fm, fb, whole, abs_tol, max_depth);
}

namespace {

// 5-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 5> kGlNodes = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                            0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGlWeights = {0.2369268850561891, 0.4786286704993665,
                                              0.5688888888888889, 0.4786286704993665,
                                              0.2369268850561891};

struct LogIntegrand {
  const ModelSpec* model;
  SuffStats ss;

  double operator()(double theta) const {
    double v = model->prior.log_pdf(theta);
    if (v == -kInf) return -kInf;
    if (!model->in_parameter_space(theta)) return -kInf;
    return v + log_likelihood(*model, ss, theta);
  }
};

QuadMarginal finish(double log_scale, double raw_integral, double boundary_fraction,
                    double warn_tol) {
  QuadMarginal out;
  out.log_value = log_scale + std::log(raw_integral);
  out.value = std::exp(out.log_value);
  out.boundary_fraction = boundary_fraction;
  out.coverage_warning = boundary_fraction > warn_tol;
  return out;
}

// Gamma prior: lambda = peak * t / (1 - t) maps (0,1) onto (0, inf) with the
// scan-located peak at t = 1/2.
QuadMarginal integrate_gamma(const LogIntegrand& g, const QuadratureSpec& spec) {
  double best = -kInf;
  double peak = 1.0;
  for (int i = 0; i <= 600; ++i) {
    const double lambda = std::pow(10.0, -10.0 + 20.0 * i / 600.0);
    const double v = g(lambda);
    if (v > best) {
      best = v;
      peak = lambda;
    }
  }
  if (best == -kInf) {
    throw std::runtime_error("quadrature found no support for the integrand");
  }
  const double shift = best;
  auto f = [&](double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double lambda = peak * t / (1.0 - t);
    const double jac = peak / ((1.0 - t) * (1.0 - t));
    const double lv = g(lambda);
    return lv == -kInf ? 0.0 : std::exp(lv - shift) * jac;
  };
  const double integral = adaptive_simpson(f, 0.0, 1.0, spec.rel_tol, spec.max_depth);
  const double edge = std::max(f(1e-7), f(1.0 - 1e-7));
  return finish(shift, integral, edge / std::max(integral, 1e-300), 1e-7);
}

// Gaussian prior: theta = c + s * tan(pi (t - 1/2)) maps (0,1) onto the line.
QuadMarginal integrate_gaussian(const LogIntegrand& g, const QuadratureSpec& spec) {
  const double prior_sd = std::sqrt(g.model->prior.variance());
  double center = g.model->prior.mean();
  double width = prior_sd;
  if (g.ss.n > 0) {
    const double xbar = g.ss.sum / static_cast<double>(g.ss.n);
    width = std::max({prior_sd, std::sqrt(g.model->obs_variance), std::fabs(xbar - center), 1.0});
    center = 0.5 * (center + xbar);
  }
  double best = -kInf;
  double c = center;
  for (int i = 0; i <= 1600; ++i) {
    const double theta = center - 20.0 * width + 40.0 * width * i / 1600.0;
    const double v = g(theta);
    if (v > best) {
      best = v;
      c = theta;
    }
  }
  if (best == -kInf) {
    throw std::runtime_error("quadrature found no support for the integrand");
  }
  // scale from the curvature proxy: half-width where the log drops by 8
  double s = width;
  for (double h = width * 40.0; h > 1e-12 * width; h *= 0.5) {
    if (g(c + h) > best - 8.0 || g(c - h) > best - 8.0) {
      s = std::max(h / 4.0, 1e-12 * width);
      break;
    }
  }
  const double shift = best;
  auto f = [&](double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double u = kPi * (t - 0.5);
    const double theta = c + s * std::tan(u);
    const double cu = std::cos(u);
    const double jac = s * kPi / (cu * cu);
    const double lv = g(theta);
    if (lv == -kInf || !std::isfinite(jac)) return 0.0;
    const double val = std::exp(lv - shift) * jac;
    return std::isfinite(val) ? val : 0.0;
  };
  const double integral = adaptive_simpson(f, 0.0, 1.0, spec.rel_tol, spec.max_depth);
  const double edge = std::max(f(1e-7), f(1.0 - 1e-7));
  return finish(shift, integral, edge / std::max(integral, 1e-300), 1e-7);
}

// Beta prior: fixed Gauss-Legendre panels on [0,1]; nodes stay interior so
// integrable endpoint behavior is handled without special casing.
QuadMarginal integrate_beta(const LogIntegrand& g, const QuadratureSpec& spec) {
  double best = -kInf;
  for (int i = 1; i < 2000; ++i) {
    const double p = i / 2000.0;
    best = std::max(best, g(p));
  }
  if (best == -kInf) {
    throw std::runtime_error("quadrature found no support for the integrand");
  }
  const double shift = best;
  const int panels = spec.beta_panels;
  const double h = 1.0 / panels;
  double integral = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double mid = (k + 0.5) * h;
    for (std::size_t j = 0; j < kGlNodes.size(); ++j) {
      const double p = mid + 0.5 * h * kGlNodes[j];
      const double lv = g(p);
      if (lv != -kInf) {
        integral += 0.5 * h * kGlWeights[j] * std::exp(lv - shift);
      }
    }
  }
  return finish(shift, integral, 0.0, 1.0);  // full [0,1] covered, no edge loss
}

}  // namespace

QuadMarginal marginal_likelihood_quadrature_full(const ModelSpec& model, const DataSet& data,
                                                 const QuadratureSpec& spec) {
  if (!model.prior.proper()) {
    throw ImproperPriorError("quadrature marginal requires a proper prior");
  }
  LogIntegrand g{&model, make_suff_stats(model, data)};

  if (model.prior.kind == PriorKind::point_mass) {
    QuadMarginal out;
    out.log_value = log_likelihood(model, g.ss, model.prior.value());
    out.value = std::exp(out.log_value);
    return out;
  }
  switch (model.prior.kind) {
    case PriorKind::gamma: return integrate_gamma(g, spec);
    case PriorKind::beta: return integrate_beta(g, spec);
    case PriorKind::gaussian: return integrate_gaussian(g, spec);
    default: break;
  }
  throw std::invalid_argument("unsupported prior kind for quadrature");
}

double marginal_likelihood_quadrature(const ModelSpec& model, const DataSet& data,
                                      const QuadratureSpec& spec) {
  return marginal_likelihood_quadrature_full(model, data, spec).value;
}

}  // namespace bmc

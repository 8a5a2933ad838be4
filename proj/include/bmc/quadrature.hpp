#pragma once

#include <functional>

#include "bmc/model.hpp"

namespace bmc {

struct QuadratureSpec {
  double rel_tol = 1e-10;  // adaptive Simpson target
  int max_depth = 48;
  int beta_panels = 2000;  // 5-point Gauss-Legendre per panel -> 1e4 nodes on [0,1]
};

struct QuadMarginal {
  double value = 0.0;
  double log_value = 0.0;
  bool coverage_warning = false;   // integrand mass detected at the domain edge
  double boundary_fraction = 0.0;  // relative integrand height at the edges
};

// Adaptive composite Simpson integration of f on [a, b].
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, int max_depth);

// Numerical integral of L(theta, x) * pi(theta): the independent oracle for
// marginal_likelihood. Gamma and gaussian priors are integrated on a
// transformed unbounded domain; beta priors use a fixed 1e4-node scheme.
QuadMarginal marginal_likelihood_quadrature_full(const ModelSpec& model, const DataSet& data,
                                                 const QuadratureSpec& spec = {});

double marginal_likelihood_quadrature(const ModelSpec& model, const DataSet& data,
                                      const QuadratureSpec& spec = {});

}  // namespace bmc

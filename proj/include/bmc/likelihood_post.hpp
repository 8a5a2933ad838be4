#pragma once

#include <cstdint>
#include <vector>

#include "bmc/model.hpp"

namespace bmc {

enum class LrConstruction { product, joint };

// Likelihood-ratio draws log L1 - log L2 together with which construction
// produced them.
struct LrSample {
  std::vector<double> log_ratios;
  LrConstruction construction = LrConstruction::product;
  ModelSpec model1;
  ModelSpec model2;
  std::uint64_t seed = 0;

  // Fraction of draws with LR strictly above 1 (ties do not exceed).
  double pr_exceeds_one() const;
};

enum class PointEstimator { posterior_mean, posterior_mode };

// Deviance summaries; the identities dic = p_d + d_bar and
// p_d = d_bar - d_hat hold by construction.
struct DicReport {
  double d_bar = 0.0;
  double d_hat = 0.0;
  double p_d = 0.0;
  double dic = 0.0;
  PointEstimator estimator_used = PointEstimator::posterior_mean;

  static DicReport from(double d_bar, double d_hat, PointEstimator est);
};

// F(z) = Pr(L(theta, x) > z | x) estimated over posterior draws; the
// full-sample likelihood, computed in log scale.
double likelihood_cdf_complement(const ModelSpec& model, const DataSet& data,
                                 const ParamDraws& draws, double z);

// E[L(theta, x) | x], the m(x,x)/m(x) quantity.
double posterior_expected_likelihood(const ModelSpec& model, const DataSet& data,
                                     const ParamDraws& draws);

DicReport dic(const ModelSpec& model, const DataSet& data, const ParamDraws& draws,
              PointEstimator estimator = PointEstimator::posterior_mean);

// Likelihood-ratio draws with each parameter sampled independently from its
// own posterior. Swapping the two models negates every log ratio exactly for
// the same seed.
LrSample lr_product_draws(const ModelSpec& model1, const ModelSpec& model2, const DataSet& data,
                          std::size_t count, std::uint64_t seed);

// Per-draw normalized model weights rho_i L_i / sum_k rho_k L_k formed from
// independently sampled posteriors. Result is indexed [model][draw].
std::vector<std::vector<double>> posterior_weight_draws(const std::vector<ModelSpec>& models,
                                                        const std::vector<double>& rho,
                                                        const DataSet& data, std::size_t count,
                                                        std::uint64_t seed);

// [mean over draws of 1/L]^{-1}, computed in log scale.
double harmonic_mean_marginal(const ModelSpec& model, const DataSet& data,
                              const ParamDraws& draws);

// Exact Pr(Y <= threshold) for Y beta-binomial over future_trials with the
// posterior-updated beta parameters.
double beta_binomial_predictive(int successes, int trials, int future_trials, int threshold,
                                const PriorSpec& prior);

}  // namespace bmc

#include "bmc/likelihood_post.hpp"

#include <cmath>
#include <limits>

#include "bmc/rng.hpp"
#include "bmc/special.hpp"

namespace bmc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> log_liks(const ModelSpec& model, const DataSet& data,
                             const ParamDraws& draws) {
  if (draws.values.empty()) {
    throw EmptyDrawsError("Monte Carlo summary over zero draws");
  }
  const SuffStats ss = make_suff_stats(model, data);
  std::vector<double> out;
  out.reserve(draws.values.size());
  for (double theta : draws.values) {
    out.push_back(log_likelihood(model, ss, theta));
  }
  return out;
}
}  // namespace

double LrSample::pr_exceeds_one() const {
  if (log_ratios.empty()) {
    throw EmptyDrawsError("empty likelihood-ratio sample");
  }
  std::size_t count = 0;
  for (double r : log_ratios) {
    if (r > 0.0) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(log_ratios.size());
}

DicReport DicReport::from(double d_bar, double d_hat, PointEstimator est) {
  DicReport r;
  r.d_bar = d_bar;
  r.d_hat = d_hat;
  r.p_d = d_bar - d_hat;
  r.dic = r.p_d + d_bar;
  r.estimator_used = est;
  return r;
}

double likelihood_cdf_complement(const ModelSpec& model, const DataSet& data,
                                 const ParamDraws& draws, double z) {
  if (z < 0.0) {
    throw std::invalid_argument("likelihood threshold z must be nonnegative");
  }
  const auto lls = log_liks(model, data, draws);
  const double log_z = z == 0.0 ? -kInf : std::log(z);
  std::size_t count = 0;
  for (double ll : lls) {
    if (ll > log_z) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(lls.size());
}

double posterior_expected_likelihood(const ModelSpec& model, const DataSet& data,
                                     const ParamDraws& draws) {
  const auto lls = log_liks(model, data, draws);
  return std::exp(log_mean_exp(lls));
}

DicReport dic(const ModelSpec& model, const DataSet& data, const ParamDraws& draws,
              PointEstimator estimator) {
  const auto lls = log_liks(model, data, draws);
  const PriorSpec posterior = posterior_update(model, data);
  const double theta_hat = estimator == PointEstimator::posterior_mean ? dist_mean(posterior)
                                                                       : dist_mode(posterior);
  const double d_hat = -2.0 * log_likelihood(model, theta_hat, data);

  // A degenerate posterior has no spread: p_D = 0 without accumulation noise.
  if (posterior.kind == PriorKind::point_mass) {
    return DicReport::from(d_hat, d_hat, estimator);
  }
  double d_bar = 0.0;
  for (double ll : lls) d_bar += -2.0 * ll;
  d_bar /= static_cast<double>(lls.size());
  return DicReport::from(d_bar, d_hat, estimator);
}

LrSample lr_product_draws(const ModelSpec& model1, const ModelSpec& model2, const DataSet& data,
                          std::size_t count, std::uint64_t seed) {
  // Streams attach to the lexicographically smaller model id, not to the
  // argument position, so that swapping the arguments reuses the same draws
  // and negates each log ratio exactly.
  const bool ordered = model1.id() <= model2.id();
  const ModelSpec& first = ordered ? model1 : model2;
  const ModelSpec& second = ordered ? model2 : model1;

  const ParamDraws draws_first =
      sample_posterior(first, data, count, derive_seed(seed, 1));
  const ParamDraws draws_second =
      sample_posterior(second, data, count, derive_seed(seed, 2));

  const SuffStats ss_first = make_suff_stats(first, data);
  const SuffStats ss_second = make_suff_stats(second, data);

  LrSample out;
  out.construction = LrConstruction::product;
  out.model1 = model1;
  out.model2 = model2;
  out.seed = seed;
  out.log_ratios.reserve(count);
  const double sign = ordered ? 1.0 : -1.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double r = log_likelihood(first, ss_first, draws_first.values[i]) -
                     log_likelihood(second, ss_second, draws_second.values[i]);
    if (!std::isfinite(r)) {
      throw std::logic_error("non-finite log likelihood ratio in product draws");
    }
    out.log_ratios.push_back(sign * r);
  }
  return out;
}

std::vector<std::vector<double>> posterior_weight_draws(const std::vector<ModelSpec>& models,
                                                        const std::vector<double>& rho,
                                                        const DataSet& data, std::size_t count,
                                                        std::uint64_t seed) {
  if (models.size() != rho.size() || models.empty()) {
    throw std::invalid_argument("need one weight per model");
  }
  double total = 0.0;
  for (double r : rho) {
    if (r < 0.0) throw std::invalid_argument("model weights must be nonnegative");
    total += r;
  }
  if (std::fabs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("model weights must sum to 1");
  }

  const std::size_t k = models.size();
  std::vector<ParamDraws> draws;
  std::vector<SuffStats> stats;
  draws.reserve(k);
  stats.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    draws.push_back(sample_posterior(models[j], data, count, derive_seed(seed, j + 1)));
    stats.push_back(make_suff_stats(models[j], data));
  }

  std::vector<std::vector<double>> weights(k, std::vector<double>(count));
  std::vector<double> logw(k);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      logw[j] = rho[j] > 0.0
                    ? std::log(rho[j]) + log_likelihood(models[j], stats[j], draws[j].values[i])
                    : -kInf;
    }
    const double lse = log_sum_exp(logw);
    for (std::size_t j = 0; j < k; ++j) {
      weights[j][i] = logw[j] == -kInf ? 0.0 : std::exp(logw[j] - lse);
    }
  }
  return weights;
}

double harmonic_mean_marginal(const ModelSpec& model, const DataSet& data,
                              const ParamDraws& draws) {
  if (!model.prior.proper()) {
    throw ImproperPriorError("harmonic mean estimator targets a marginal; prior must be proper");
  }
  auto lls = log_liks(model, data, draws);
  for (double& ll : lls) ll = -ll;
  return std::exp(-log_mean_exp(lls));
}

double beta_binomial_predictive(int successes, int trials, int future_trials, int threshold,
                                const PriorSpec& prior) {
  if (prior.kind != PriorKind::beta) {
    throw std::invalid_argument("beta prior required");
  }
  if (successes < 0 || trials < successes || future_trials < 0) {
    throw std::invalid_argument("counts must satisfy 0 <= successes <= trials");
  }
  if (threshold > future_trials || threshold < 0) {
    throw std::invalid_argument("threshold must lie in {0,...,future_trials}");
  }
  const double a = prior.a() + successes;
  const double b = prior.b() + (trials - successes);
  if (!(a > 0.0) || !(b > 0.0)) {
    throw ImproperPosteriorError("posterior beta(" + std::to_string(a) + "," +
                                 std::to_string(b) + ") not integrable");
  }
  const double log_denom = log_beta_fn(a, b);
  double p = 0.0;
  for (int y = 0; y <= threshold; ++y) {
    p += std::exp(log_choose(future_trials, y) + log_beta_fn(a + y, b + future_trials - y) -
                  log_denom);
  }
  return std::min(p, 1.0);
}

}  // namespace bmc

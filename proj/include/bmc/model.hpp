#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bmc/errors.hpp"

namespace bmc {

enum class Family { poisson, binomial, gaussian };

std::string family_name(Family f);

enum class PriorKind { gamma, beta, gaussian, point_mass, improper_power };

// One-dimensional prior (or posterior, or pseudo-prior) over a model
// parameter. Hyperparameters live in (p1, p2) with kind-specific meaning:
//   gamma          (shape, rate)       shape > 0, rate >= 0; proper iff rate > 0
//   beta           (a, b)              a, b >= 0; proper iff a > 0 and b > 0
//   gaussian       (mean, variance)    variance > 0; always proper
//   point_mass     (value, unused)     always proper
//   improper_power (exponent, unused)  pi(theta) ~ theta^exponent, never proper
struct PriorSpec {
  PriorKind kind = PriorKind::gaussian;
  double p1 = 0.0;
  double p2 = 1.0;

  static PriorSpec Gamma(double shape, double rate);
  static PriorSpec Beta(double a, double b);
  static PriorSpec Gaussian(double mean, double variance);
  static PriorSpec PointMass(double value);
  static PriorSpec ImproperPower(double exponent);

  double shape() const;
  double rate() const;
  double a() const;
  double b() const;
  double mean() const;
  double variance() const;
  double value() const;
  double exponent() const;

  // True iff the density integrates to a finite value.
  bool proper() const;

  // Normalized log density for proper continuous kinds; unnormalized
  // exponent * log(theta) for improper_power. Throws for point_mass.
  double log_pdf(double theta) const;

  std::string describe() const;

  bool operator==(const PriorSpec& other) const = default;
};

// A likelihood family plus its prior; the unit of model comparison.
struct ModelSpec {
  Family family = Family::gaussian;
  int trials = 1;             // binomial trial count m >= 1
  double obs_variance = 1.0;  // gaussian known variance > 0
  PriorSpec prior;
  std::string label;

  static ModelSpec Poisson(PriorSpec prior, std::string label = "");
  static ModelSpec Binomial(int trials, PriorSpec prior, std::string label = "");
  static ModelSpec Gaussian(double known_variance, PriorSpec prior, std::string label = "");

  // Stable identifier built from family, fixed constants and prior.
  std::string id() const;

  // True iff param lies in the (open, except binomial) parameter space.
  bool in_parameter_space(double param) const;
};

struct DataSet {
  std::vector<double> values;

  std::size_t n() const { return values.size(); }
  double sum() const;
  double sum_sq() const;
  double mean() const;  // throws on empty data
};

// Throws std::invalid_argument when the observations are incompatible with
// the family (negative or non-integer counts, out-of-range binomial cells).
void validate_data(const ModelSpec& model, const DataSet& data);

// Per-(model, data) sufficient statistics so log likelihoods are O(1).
struct SuffStats {
  std::size_t n = 0;
  double sum = 0.0;
  double sum_sq = 0.0;
  double log_const = 0.0;  // data-dependent, parameter-free part
};

SuffStats make_suff_stats(const ModelSpec& model, const DataSet& data);

// Full-sample log likelihood at param; empty data give 0.
double log_likelihood(const ModelSpec& model, double param, const DataSet& data);
double log_likelihood(const ModelSpec& model, const SuffStats& ss, double param);

// Conjugate posterior hyperparameters. Throws ImproperPosteriorError when the
// update yields a non-integrable density, std::invalid_argument for
// non-conjugate prior kinds.
PriorSpec posterior_update(const ModelSpec& model, const DataSet& data);

double dist_mean(const PriorSpec& dist);
double dist_mode(const PriorSpec& dist);  // throws when the mode is not interior/unique

enum class DrawSource { posterior, prior, pseudo_prior };

// A seeded sequence of parameter draws for one model.
struct ParamDraws {
  std::vector<double> values;
  DrawSource source = DrawSource::posterior;
  std::uint64_t seed = 0;
  std::string model_id;
};

// One draw from dist; boundary values are rejected and redrawn so parameters
// stay strictly interior.
double draw_param(const PriorSpec& dist, std::mt19937_64& engine);

// iid draws from dist, deterministic given seed. Throws
// ImproperDistributionError when dist is not proper.
ParamDraws sample(const ModelSpec& model, const PriorSpec& dist, std::size_t count,
                  std::uint64_t seed, DrawSource source = DrawSource::prior);

ParamDraws sample_posterior(const ModelSpec& model, const DataSet& data, std::size_t count,
                            std::uint64_t seed);
ParamDraws sample_prior(const ModelSpec& model, std::size_t count, std::uint64_t seed);

// log m(x) = log of the prior expectation of the likelihood, closed form.
// Throws ImproperPriorError for improper priors.
double log_marginal_likelihood(const ModelSpec& model, const DataSet& data);
double marginal_likelihood(const ModelSpec& model, const DataSet& data);

// Proper distribution concentrated where the data sit; the shipped
// alternative pseudo-prior for models whose own prior is unusable.
PriorSpec data_centered_distribution(const ModelSpec& model, const DataSet& data);

}  // namespace bmc

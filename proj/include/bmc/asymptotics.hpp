#pragma once

#include <cstdint>
#include <vector>

#include "bmc/joint.hpp"
#include "bmc/model.hpp"

namespace bmc {

// A concrete member of a likelihood family: the data-generating truth of an
// experiment, or a candidate in a KL projection.
struct FamilyMember {
  Family family = Family::gaussian;
  int trials = 1;          // binomial m
  double variance = 1.0;   // gaussian observation variance
  double param = 0.0;

  static FamilyMember Poisson(double lambda);
  static FamilyMember Binomial(int trials, double p);
  static FamilyMember Gaussian(double mean, double variance);
};

// Nested comparison: the null model fixes the tested component at null_value
// inside the full model. For the shipped one-parameter families the null is a
// point (dim_null = 0, dim_full = 1).
struct EmbeddedPair {
  ModelSpec full_model;
  double null_value = 0.0;
  int dim_null = 0;
  int dim_full = 1;

  void validate() const;
};

struct AsymptoticScenario {
  FamilyMember truth;
  ModelPairConfig pair;
  std::vector<int> n_grid;
  int replications = 1;
  std::uint64_t seed = 0;
  std::size_t draws_per_cell = 2000;
};

struct ConsistencyRow {
  int n = 0;
  double mean_prob = 0.0;
  double std_prob = 0.0;
};

// Chi-square cdf with df degrees of freedom; 0 for x <= 0.
double chi2_cdf(int df, double x);

// Closed-form maximum likelihood estimate; throws std::domain_error when the
// MLE sits on the parameter-space boundary (degenerate data).
double mle(const ModelSpec& model, const DataSet& data);

// p = 1 - F_{df}(2 (l_full(mle) - l_null)), the Wilks statistic convention.
double lrt_pvalue(const EmbeddedPair& pair, const DataSet& data);

// Monte Carlo fraction of full-posterior draws where the null-fixed
// log likelihood strictly exceeds the drawn one.
double embedded_posterior_lr_prob(const EmbeddedPair& pair, const DataSet& data,
                                  const ParamDraws& draws);

// Pr[X2 - X1 > gap] for independent chi-squares with df_small and df_large
// degrees of freedom, by simulation.
double chi2_difference_tail_prob(int df_small, int df_large, double gap, std::size_t count,
                                 std::uint64_t seed);

// KL(truth || candidate); +inf when the candidate's support does not dominate
// the truth (including mixed discrete/continuous pairs).
double kl_divergence(const FamilyMember& truth, const FamilyMember& candidate);

struct KlProjection {
  double param = 0.0;
  double divergence = 0.0;
};

// argmin over param of KL(truth || family(param)) by bracketed golden-section
// search. Throws AllInfiniteError when no probe point has finite divergence.
KlProjection kl_projection(const FamilyMember& truth, const FamilyMember& family_proto,
                           double bracket_lo, double bracket_hi, double tol = 1e-8);

// Seeded iid draws from a concrete distribution.
DataSet generate_data(const FamilyMember& dist, std::size_t n, std::uint64_t seed);

// For each n: replications datasets from the truth, the joint decision
// probability per dataset, and (mean, std) summaries.
std::vector<ConsistencyRow> consistency_experiment(const AsymptoticScenario& scenario);

}  // namespace bmc

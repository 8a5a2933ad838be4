#include <doctest.h>

#include <cmath>
#include <limits>

#include "bmc/asymptotics.hpp"
#include "bmc/quadrature.hpp"
#include "bmc/rng.hpp"
#include "bmc/special.hpp"
#include "test_support.hpp"

using namespace bmc;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

EmbeddedPair gaussian_mean_test(double prior_variance = 1e6) {
  EmbeddedPair pair;
  pair.full_model = ModelSpec::Gaussian(1.0, PriorSpec::Gaussian(0.0, prior_variance));
  pair.null_value = 0.0;
  return pair;
}

DataSet constant_data(double xbar, int n) {
  DataSet d;
  d.values.assign(static_cast<std::size_t>(n), xbar);
  return d;
}
}  // namespace

TEST_CASE("chi-square cdf") {
  // df 1 via the standard normal identity
  CHECK(chi2_cdf(1, 2.5) ==
        doctest::Approx(1.0 - 2.0 * normal_cdf(-std::sqrt(2.5))).epsilon(1e-10));
  CHECK(chi2_cdf(1, 2.5) == doctest::Approx(0.8861537019933423).epsilon(1e-10));
  CHECK(chi2_cdf(3, 0.0) == 0.0);
  CHECK(chi2_cdf(3, -1.0) == 0.0);
  // df 2 closed form; the median of chi2_2 is 2 ln 2
  CHECK(chi2_cdf(2, 2.0 * std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-13));
  // nondecreasing, into [0,1]
  double prev = 0.0;
  for (double x = 0.0; x <= 20.0; x += 0.25) {
    const double c = chi2_cdf(5, x);
    CHECK(c >= prev);
    CHECK(c <= 1.0);
    prev = c;
  }
  CHECK_THROWS_AS(chi2_cdf(0, 1.0), std::invalid_argument);
}

TEST_CASE("closed-form MLEs") {
  const ModelSpec pois = ModelSpec::Poisson(PriorSpec::Gamma(1, 1));
  CHECK(mle(pois, DataSet{{3, 5, 2}}) == doctest::Approx(10.0 / 3.0));
  CHECK_THROWS_AS(mle(pois, DataSet{{0, 0, 0}}), std::domain_error);
  const ModelSpec binom = ModelSpec::Binomial(5, PriorSpec::Beta(1, 1));
  CHECK(mle(binom, DataSet{{3.0}}) == doctest::Approx(0.6));
  CHECK_THROWS_AS(mle(binom, DataSet{{5, 5}}), std::domain_error);
  CHECK(mle(ModelSpec::Gaussian(1.0, PriorSpec::Gaussian(0, 1)), DataSet{{1, 2}}) ==
        doctest::Approx(1.5));
}

TEST_CASE("likelihood ratio test p-values") {
  const EmbeddedPair pair = gaussian_mean_test();
  CHECK(lrt_pvalue(pair, constant_data(0.5, 10)) ==
        doctest::Approx(0.11384629800665769).epsilon(1e-10));
  CHECK(lrt_pvalue(pair, constant_data(0.0, 10)) == doctest::Approx(1.0));
  CHECK(lrt_pvalue(pair, constant_data(1.0, 10)) ==
        doctest::Approx(0.0015654022580025018).epsilon(1e-8));
}

TEST_CASE("posterior Pr(LR > 1) reproduces the LRT p-value for the flat-limit gaussian") {
  const EmbeddedPair pair = gaussian_mean_test();
  const std::size_t draws = 100000;
  for (double xbar : {0.2, 0.5, 1.0}) {
    const DataSet data = constant_data(xbar, 10);
    const ParamDraws post = sample_posterior(pair.full_model, data, draws,
                                             derive_seed(55, static_cast<std::uint64_t>(xbar * 10)));
    const double prob = embedded_posterior_lr_prob(pair, data, post);
    const double pval = lrt_pvalue(pair, data);
    CHECK(std::fabs(prob - pval) <
          3 * bmc::test::binomial_se(pval, static_cast<double>(draws)));
  }

  // xbar = 0: the null sits at the posterior mode, the event holds a.s.
  const DataSet zero = constant_data(0.0, 10000);
  const ParamDraws post = sample_posterior(pair.full_model, zero, 20000, 77);
  CHECK(embedded_posterior_lr_prob(pair, zero, post) > 0.99);

  CHECK_THROWS_AS(embedded_posterior_lr_prob(pair, zero, ParamDraws{}), EmptyDrawsError);
}

TEST_CASE("informative prior shrinking toward the null raises the probability") {
  const DataSet data = constant_data(0.5, 10);
  const std::size_t draws = 100000;

  const EmbeddedPair flat = gaussian_mean_test(1e6);
  const ParamDraws post_flat = sample_posterior(flat.full_model, data, draws, 60);
  const double p_flat = embedded_posterior_lr_prob(flat, data, post_flat);

  const EmbeddedPair tight = gaussian_mean_test(0.1);
  const ParamDraws post_tight = sample_posterior(tight.full_model, data, draws, 61);
  const double p_tight = embedded_posterior_lr_prob(tight, data, post_tight);

  CHECK(p_tight > p_flat);
  // closed form for prior N(0, 0.1): posterior N(0.25, 0.05)
  CHECK(std::fabs(p_tight - 0.13217435372028186) <
        3 * bmc::test::binomial_se(0.132, static_cast<double>(draws)));
}

TEST_CASE("difference of independent chi-squares") {
  const std::size_t n = 200000;
  for (int p : {1, 2, 5}) {
    const double est = chi2_difference_tail_prob(p, p, 0.0, n, 70 + p);
    CHECK(std::fabs(est - 0.5) < 3 * bmc::test::binomial_se(0.5, static_cast<double>(n)));
  }
  CHECK(chi2_difference_tail_prob(1, 1, 1e9, 10000, 3) == 0.0);

  // quadrature oracle for p1=1, p2=2, gap=1: integrate the joint density of
  // (X1, X2) over {x2 - x1 > gap}, with x1 = u^2 to remove the chi2_1
  // endpoint singularity
  auto chi2_pdf = [](int df, double x) {
    if (x <= 0.0) return 0.0;
    const double a = 0.5 * df;
    return std::exp((a - 1.0) * std::log(x) - 0.5 * x - a * std::log(2.0) - std::lgamma(a));
  };
  const double gap = 1.0;
  auto inner = [&](double x1) {
    return adaptive_simpson([&](double x2) { return chi2_pdf(2, x2); }, x1 + gap, x1 + gap + 80.0,
                            1e-9, 30);
  };
  const double two_over_sqrt2pi = 2.0 / std::sqrt(2.0 * std::acos(-1.0));
  const double oracle = adaptive_simpson(
      [&](double u) { return two_over_sqrt2pi * std::exp(-0.5 * u * u) * inner(u * u); }, 0.0,
      12.0, 1e-7, 24);
  CHECK(oracle == doctest::Approx(std::exp(-0.5) / std::sqrt(2.0)).epsilon(1e-4));
  const double est = chi2_difference_tail_prob(1, 2, gap, n, 71);
  CHECK(std::fabs(est - oracle) < 3 * bmc::test::binomial_se(oracle, static_cast<double>(n)));
}

TEST_CASE("KL divergence closed forms and support checks") {
  CHECK(kl_divergence(FamilyMember::Gaussian(0, 1), FamilyMember::Gaussian(0, 1)) == 0.0);
  for (double theta : {-1.0, 0.0, 1.0, 2.5}) {
    const double expected = std::log(2.0) + (1.0 + (1.0 - theta) * (1.0 - theta)) / 8.0 - 0.5;
    CHECK(kl_divergence(FamilyMember::Gaussian(1, 1), FamilyMember::Gaussian(theta, 4)) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
  // N(0,1) vs N(theta,1) = theta^2/2
  CHECK(kl_divergence(FamilyMember::Gaussian(0, 1), FamilyMember::Gaussian(2, 1)) ==
        doctest::Approx(2.0).epsilon(1e-12));

  // Poisson truth has mass above any binomial support
  CHECK(kl_divergence(FamilyMember::Poisson(3), FamilyMember::Binomial(5, 0.6)) == kInf);
  // discrete vs continuous measures are mutually singular
  CHECK(kl_divergence(FamilyMember::Poisson(3), FamilyMember::Gaussian(3, 3)) == kInf);
  CHECK(kl_divergence(FamilyMember::Gaussian(3, 3), FamilyMember::Poisson(3)) == kInf);

  // summation matches the Poisson/Poisson closed form
  for (double lambda : {1.0, 3.0, 7.0}) {
    const double expected = 3.0 * std::log(3.0 / lambda) + lambda - 3.0;
    CHECK(kl_divergence(FamilyMember::Poisson(3), FamilyMember::Poisson(lambda)) ==
          doctest::Approx(expected).epsilon(1e-10));
  }
  // binomial truth against a Poisson candidate is finite
  CHECK(std::isfinite(kl_divergence(FamilyMember::Binomial(5, 0.6), FamilyMember::Poisson(3))));
}

TEST_CASE("KL projection by golden section") {
  const auto proj1 = kl_projection(FamilyMember::Gaussian(1, 1), FamilyMember::Gaussian(0, 4),
                                   -10.0, 10.0, 1e-8);
  CHECK(std::fabs(proj1.param - 1.0) < 1e-6);

  const auto proj2 = kl_projection(FamilyMember::Gaussian(0, 1), FamilyMember::Gaussian(0, 1),
                                   -5.0, 5.0, 1e-8);
  CHECK(std::fabs(proj2.param) < 1e-6);
  CHECK(proj2.divergence < 1e-12);

  const auto proj3 =
      kl_projection(FamilyMember::Poisson(3), FamilyMember::Poisson(1), 0.1, 50.0, 1e-8);
  CHECK(std::fabs(proj3.param - 3.0) < 1e-6);

  // stability under tolerance refinement
  const auto coarse = kl_projection(FamilyMember::Gaussian(1, 1), FamilyMember::Gaussian(0, 4),
                                    -10.0, 10.0, 1e-6);
  const auto fine = kl_projection(FamilyMember::Gaussian(1, 1), FamilyMember::Gaussian(0, 4),
                                  -10.0, 10.0, 5e-7);
  CHECK(std::fabs(coarse.param - fine.param) < 1e-6);

  CHECK_THROWS_AS(
      kl_projection(FamilyMember::Poisson(3), FamilyMember::Binomial(5, 0.5), 0.01, 0.99, 1e-8),
      AllInfiniteError);
}

TEST_CASE("data generation is deterministic and family-correct") {
  const DataSet a = generate_data(FamilyMember::Poisson(3), 1000, 5);
  const DataSet b = generate_data(FamilyMember::Poisson(3), 1000, 5);
  CHECK(a.values == b.values);
  for (double v : a.values) CHECK(v >= 0.0);
  const DataSet c = generate_data(FamilyMember::Binomial(5, 0.6), 100, 6);
  for (double v : c.values) CHECK(v <= 5.0);
}

TEST_CASE("consistency experiment summaries") {
  AsymptoticScenario scenario;
  scenario.truth = FamilyMember::Gaussian(0.8, 1.0);
  scenario.pair = make_pair_config(
      ModelSpec::Gaussian(1.0, PriorSpec::Gaussian(0.0, 10.0)),
      ModelSpec::Gaussian(1.0, PriorSpec::PointMass(0.0)));
  scenario.n_grid = {10, 100};
  scenario.replications = 10;
  scenario.seed = 2024;
  scenario.draws_per_cell = 1000;

  const auto rows = consistency_experiment(scenario);
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    CHECK(row.mean_prob >= 0.0);
    CHECK(row.mean_prob <= 1.0);
    CHECK(row.std_prob >= 0.0);
  }
  CHECK(rows[1].mean_prob > rows[0].mean_prob);

  // replications = 1: single cell, zero dispersion by convention
  scenario.n_grid = {10};
  scenario.replications = 1;
  const auto single = consistency_experiment(scenario);
  REQUIRE(single.size() == 1);
  CHECK(single[0].std_prob == 0.0);

  scenario.n_grid = {10, 5};
  CHECK_THROWS_AS(consistency_experiment(scenario), std::invalid_argument);
}

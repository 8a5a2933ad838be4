#include "bmc/asymptotics.hpp"

#include <cmath>
#include <limits>

#include "bmc/rng.hpp"
#include "bmc/special.hpp"

namespace bmc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

FamilyMember FamilyMember::Poisson(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("poisson rate must be positive");
  FamilyMember f;
  f.family = Family::poisson;
  f.param = lambda;
  return f;
}

FamilyMember FamilyMember::Binomial(int trials, double p) {
  if (trials < 1 || !(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("binomial member requires m >= 1 and p in [0,1]");
  }
  FamilyMember f;
  f.family = Family::binomial;
  f.trials = trials;
  f.param = p;
  return f;
}

FamilyMember FamilyMember::Gaussian(double mean, double variance) {
  if (!(variance > 0.0)) throw std::invalid_argument("gaussian variance must be positive");
  FamilyMember f;
  f.family = Family::gaussian;
  f.variance = variance;
  f.param = mean;
  return f;
}

void EmbeddedPair::validate() const {
  if (dim_null < 0 || dim_full - dim_null < 1) {
    throw std::invalid_argument("embedded pair needs dim_full - dim_null >= 1");
  }
  if (!full_model.in_parameter_space(null_value)) {
    throw std::invalid_argument("null value outside the full model's parameter space");
  }
}

double chi2_cdf(int df, double x) {
  if (df < 1) throw std::invalid_argument("chi2_cdf requires df >= 1");
  if (x <= 0.0) return 0.0;
  return regularized_gamma_p(0.5 * df, 0.5 * x);
}

double mle(const ModelSpec& model, const DataSet& data) {
  validate_data(model, data);
  if (data.n() == 0) throw std::domain_error("MLE undefined for empty data");
  const double n = static_cast<double>(data.n());
  const double s = data.sum();
  switch (model.family) {
    case Family::poisson:
      if (s <= 0.0) throw std::domain_error("poisson MLE at the boundary (all zeros)");
      return s / n;
    case Family::binomial: {
      const double total = n * model.trials;
      if (s <= 0.0 || s >= total) {
        throw std::domain_error("binomial MLE at the boundary (all successes or failures)");
      }
      return s / total;
    }
    case Family::gaussian:
      return s / n;
  }
  throw std::logic_error("unreachable family");
}

double lrt_pvalue(const EmbeddedPair& pair, const DataSet& data) {
  pair.validate();
  const double theta_hat = mle(pair.full_model, data);
  const SuffStats ss = make_suff_stats(pair.full_model, data);
  const double stat = 2.0 * (log_likelihood(pair.full_model, ss, theta_hat) -
                             log_likelihood(pair.full_model, ss, pair.null_value));
  return 1.0 - chi2_cdf(pair.dim_full - pair.dim_null, std::max(stat, 0.0));
}

double embedded_posterior_lr_prob(const EmbeddedPair& pair, const DataSet& data,
                                  const ParamDraws& draws) {
  pair.validate();
  if (draws.values.empty()) {
    throw EmptyDrawsError("embedded posterior probability over zero draws");
  }
  const SuffStats ss = make_suff_stats(pair.full_model, data);
  const double l_null = log_likelihood(pair.full_model, ss, pair.null_value);
  std::size_t count = 0;
  for (double theta : draws.values) {
    if (l_null > log_likelihood(pair.full_model, ss, theta)) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(draws.values.size());
}

double chi2_difference_tail_prob(int df_small, int df_large, double gap, std::size_t count,
                                 std::uint64_t seed) {
  if (df_small < 1 || df_large < 1) {
    throw std::invalid_argument("degrees of freedom must be >= 1");
  }
  if (count == 0) throw EmptyDrawsError("chi-square tail probability over zero draws");
  auto engine = make_engine(derive_seed(seed, 21));
  std::chi_squared_distribution<double> small(df_small);
  std::chi_squared_distribution<double> large(df_large);
  std::size_t wins = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (large(engine) - small(engine) > gap) ++wins;
  }
  return static_cast<double>(wins) / static_cast<double>(count);
}

namespace {

bool discrete(Family f) { return f != Family::gaussian; }

double log_pmf(const FamilyMember& d, double x) {
  switch (d.family) {
    case Family::poisson:
      return -d.param + x * std::log(d.param) - log_gamma(x + 1.0);
    case Family::binomial: {
      if (x > d.trials) return -kInf;
      double v = log_choose(d.trials, x);
      v += (x > 0.0) ? x * std::log(d.param) : 0.0;
      v += (d.trials - x > 0.0) ? (d.trials - x) * std::log1p(-d.param) : 0.0;
      return d.param <= 0.0 && x > 0.0      ? -kInf
             : d.param >= 1.0 && x < d.trials ? -kInf
                                              : v;
    }
    case Family::gaussian:
      throw std::logic_error("log_pmf on continuous family");
  }
  throw std::logic_error("unreachable family");
}

}  // namespace

double kl_divergence(const FamilyMember& truth, const FamilyMember& candidate) {
  if (discrete(truth.family) != discrete(candidate.family)) {
    return kInf;  // mutually singular measure types
  }
  if (!discrete(truth.family)) {
    const double s1 = truth.variance;
    const double s2 = candidate.variance;
    const double d = truth.param - candidate.param;
    return 0.5 * std::log(s2 / s1) + (s1 + d * d) / (2.0 * s2) - 0.5;
  }
  // Discrete pair: sum over the truth's support until the tail is negligible.
  const int max_x = truth.family == Family::binomial
                        ? truth.trials
                        : static_cast<int>(truth.param + 60.0 * std::sqrt(truth.param) + 120.0);
  double kl = 0.0;
  double mass = 0.0;
  for (int x = 0; x <= max_x; ++x) {
    const double lp = log_pmf(truth, x);
    if (lp == -kInf) continue;
    const double p = std::exp(lp);
    if (p < 1e-18 && mass > 0.5) continue;
    const double lq = log_pmf(candidate, x);
    if (lq == -kInf) {
      return kInf;  // truth mass where the candidate has none
    }
    kl += p * (lp - lq);
    mass += p;
  }
  if (truth.family == Family::poisson && mass < 1.0 - 1e-12 &&
      candidate.family == Family::binomial) {
    return kInf;  // Poisson tail extends past the binomial support
  }
  return std::max(kl, 0.0);
}

KlProjection kl_projection(const FamilyMember& truth, const FamilyMember& family_proto,
                           double bracket_lo, double bracket_hi, double tol) {
  if (!(bracket_lo < bracket_hi)) {
    throw std::invalid_argument("projection bracket must satisfy lo < hi");
  }
  auto objective = [&](double theta) {
    FamilyMember cand = family_proto;
    cand.param = theta;
    return kl_divergence(truth, cand);
  };

  // Probe the bracket; shrink to the finite region before golden section.
  const int probes = 128;
  double lo = kInf;
  double hi = -kInf;
  for (int i = 0; i <= probes; ++i) {
    const double t = bracket_lo + (bracket_hi - bracket_lo) * i / probes;
    if (std::isfinite(objective(t))) {
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
  }
  if (!(lo <= hi)) {
    throw AllInfiniteError("no bracket point has finite divergence");
  }
  if (lo == hi) {
    return {lo, objective(lo)};
  }

  const double inv_phi = 2.0 / (1.0 + std::sqrt(5.0));
  double a = lo;
  double b = hi;
  double c = b - (b - a) * inv_phi;
  double d = a + (b - a) * inv_phi;
  double fc = objective(c);
  double fd = objective(d);
  while (std::fabs(b - a) > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * inv_phi;
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * inv_phi;
      fd = objective(d);
    }
  }
  const double arg = 0.5 * (a + b);
  return {arg, objective(arg)};
}

DataSet generate_data(const FamilyMember& dist, std::size_t n, std::uint64_t seed) {
  auto engine = make_engine(derive_seed(seed, 31));
  DataSet data;
  data.values.reserve(n);
  switch (dist.family) {
    case Family::poisson: {
      std::poisson_distribution<long> pd(dist.param);
      for (std::size_t i = 0; i < n; ++i) data.values.push_back(static_cast<double>(pd(engine)));
      break;
    }
    case Family::binomial: {
      std::binomial_distribution<int> bd(dist.trials, dist.param);
      for (std::size_t i = 0; i < n; ++i) data.values.push_back(static_cast<double>(bd(engine)));
      break;
    }
    case Family::gaussian: {
      std::normal_distribution<double> nd(dist.param, std::sqrt(dist.variance));
      for (std::size_t i = 0; i < n; ++i) data.values.push_back(nd(engine));
      break;
    }
  }
  return data;
}

std::vector<ConsistencyRow> consistency_experiment(const AsymptoticScenario& scenario) {
  if (scenario.n_grid.empty()) throw std::invalid_argument("n grid must be nonempty");
  for (std::size_t i = 1; i < scenario.n_grid.size(); ++i) {
    if (scenario.n_grid[i] <= scenario.n_grid[i - 1]) {
      throw std::invalid_argument("n grid must be strictly increasing");
    }
  }
  if (scenario.replications < 1) throw std::invalid_argument("replications must be >= 1");
  scenario.pair.validate();

  std::vector<ConsistencyRow> rows;
  rows.reserve(scenario.n_grid.size());
  for (std::size_t ni = 0; ni < scenario.n_grid.size(); ++ni) {
    const int n = scenario.n_grid[ni];
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int rep = 0; rep < scenario.replications; ++rep) {
      // Cell seeds depend only on (scenario seed, n index, replication), so
      // any execution order reproduces the same table.
      const std::uint64_t cell = derive_seed(scenario.seed, ni + 1, rep + 1);
      const DataSet data = generate_data(scenario.truth, n, derive_seed(cell, 1));
      const double p =
          joint_decision_prob(scenario.pair, data, scenario.draws_per_cell, derive_seed(cell, 2));
      sum += p;
      sum_sq += p * p;
    }
    const double reps = static_cast<double>(scenario.replications);
    ConsistencyRow row;
    row.n = n;
    row.mean_prob = sum / reps;
    row.std_prob = scenario.replications > 1
                       ? std::sqrt(std::max(0.0, (sum_sq - sum * row.mean_prob) / (reps - 1.0)))
                       : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace bmc

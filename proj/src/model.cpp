#include "bmc/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bmc/rng.hpp"
#include "bmc/special.hpp"

namespace bmc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLog2Pi = 1.8378770664093453;

bool is_count(double v) {
  return v >= 0.0 && std::floor(v) == v && std::isfinite(v);
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}
}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::poisson: return "poisson";
    case Family::binomial: return "binomial";
    case Family::gaussian: return "gaussian";
  }
  return "unknown";
}

PriorSpec PriorSpec::Gamma(double shape, double rate) {
  if (!(shape > 0.0) || !(rate >= 0.0)) {
    throw std::invalid_argument("gamma prior requires shape > 0 and rate >= 0");
  }
  return PriorSpec{PriorKind::gamma, shape, rate};
}

PriorSpec PriorSpec::Beta(double a, double b) {
  if (!(a >= 0.0) || !(b >= 0.0)) {
    throw std::invalid_argument("beta prior requires a >= 0 and b >= 0");
  }
  return PriorSpec{PriorKind::beta, a, b};
}

PriorSpec PriorSpec::Gaussian(double mean, double variance) {
  if (!(variance > 0.0)) {
    throw std::invalid_argument("gaussian prior requires variance > 0");
  }
  return PriorSpec{PriorKind::gaussian, mean, variance};
}

PriorSpec PriorSpec::PointMass(double value) {
  return PriorSpec{PriorKind::point_mass, value, 0.0};
}

PriorSpec PriorSpec::ImproperPower(double exponent) {
  return PriorSpec{PriorKind::improper_power, exponent, 0.0};
}

namespace {
void expect_kind(const PriorSpec& p, PriorKind k, const char* what) {
  if (p.kind != k) {
    throw std::logic_error(std::string("prior accessor mismatch: ") + what);
  }
}
}  // namespace

double PriorSpec::shape() const { expect_kind(*this, PriorKind::gamma, "shape"); return p1; }
double PriorSpec::rate() const { expect_kind(*this, PriorKind::gamma, "rate"); return p2; }
double PriorSpec::a() const { expect_kind(*this, PriorKind::beta, "a"); return p1; }
double PriorSpec::b() const { expect_kind(*this, PriorKind::beta, "b"); return p2; }
double PriorSpec::mean() const { expect_kind(*this, PriorKind::gaussian, "mean"); return p1; }
double PriorSpec::variance() const { expect_kind(*this, PriorKind::gaussian, "variance"); return p2; }
double PriorSpec::value() const { expect_kind(*this, PriorKind::point_mass, "value"); return p1; }
double PriorSpec::exponent() const { expect_kind(*this, PriorKind::improper_power, "exponent"); return p1; }

bool PriorSpec::proper() const {
  switch (kind) {
    case PriorKind::gamma: return p1 > 0.0 && p2 > 0.0;
    case PriorKind::beta: return p1 > 0.0 && p2 > 0.0;
    case PriorKind::gaussian: return true;
    case PriorKind::point_mass: return true;
    case PriorKind::improper_power: return false;
  }
  return false;
}

double PriorSpec::log_pdf(double theta) const {
  switch (kind) {
    case PriorKind::gamma: {
      if (!proper()) throw ImproperDistributionError("gamma log_pdf with rate 0");
      if (theta <= 0.0) return -kInf;
      return p1 * std::log(p2) - log_gamma(p1) + (p1 - 1.0) * std::log(theta) - p2 * theta;
    }
    case PriorKind::beta: {
      if (!proper()) throw ImproperDistributionError("beta log_pdf with zero hyperparameter");
      if (theta <= 0.0 || theta >= 1.0) return -kInf;
      return (p1 - 1.0) * std::log(theta) + (p2 - 1.0) * std::log1p(-theta) - log_beta_fn(p1, p2);
    }
    case PriorKind::gaussian: {
      const double z = theta - p1;
      return -0.5 * (kLog2Pi + std::log(p2)) - 0.5 * z * z / p2;
    }
    case PriorKind::point_mass:
      throw std::invalid_argument("point_mass has no density");
    case PriorKind::improper_power:
      if (theta <= 0.0) return -kInf;
      return p1 * std::log(theta);  // unnormalized
  }
  throw std::logic_error("unreachable prior kind");
}

std::string PriorSpec::describe() const {
  switch (kind) {
    case PriorKind::gamma: return "gamma(" + num(p1) + "," + num(p2) + ")";
    case PriorKind::beta: return "beta(" + num(p1) + "," + num(p2) + ")";
    case PriorKind::gaussian: return "gaussian(" + num(p1) + "," + num(p2) + ")";
    case PriorKind::point_mass: return "point_mass(" + num(p1) + ")";
    case PriorKind::improper_power: return "improper_power(" + num(p1) + ")";
  }
  return "unknown";
}

ModelSpec ModelSpec::Poisson(PriorSpec prior, std::string label) {
  ModelSpec m;
  m.family = Family::poisson;
  m.prior = prior;
  m.label = label.empty() ? "poisson" : std::move(label);
  return m;
}

ModelSpec ModelSpec::Binomial(int trials, PriorSpec prior, std::string label) {
  if (trials < 1) {
    throw std::invalid_argument("binomial trial count m must be >= 1");
  }
  ModelSpec m;
  m.family = Family::binomial;
  m.trials = trials;
  m.prior = prior;
  m.label = label.empty() ? "binomial" : std::move(label);
  return m;
}

ModelSpec ModelSpec::Gaussian(double known_variance, PriorSpec prior, std::string label) {
  if (!(known_variance > 0.0)) {
    throw std::invalid_argument("gaussian known variance must be > 0");
  }
  ModelSpec m;
  m.family = Family::gaussian;
  m.obs_variance = known_variance;
  m.prior = prior;
  m.label = label.empty() ? "gaussian" : std::move(label);
  return m;
}

std::string ModelSpec::id() const {
  std::string s = family_name(family);
  if (family == Family::binomial) s += "(m=" + std::to_string(trials) + ")";
  if (family == Family::gaussian) s += "(var=" + num(obs_variance) + ")";
  return s + "+" + prior.describe();
}

bool ModelSpec::in_parameter_space(double param) const {
  if (!std::isfinite(param)) return false;
  switch (family) {
    case Family::poisson: return param > 0.0;
    case Family::binomial: return param >= 0.0 && param <= 1.0;
    case Family::gaussian: return true;
  }
  return false;
}

double DataSet::sum() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

double DataSet::sum_sq() const {
  double s = 0.0;
  for (double v : values) s += v * v;
  return s;
}

double DataSet::mean() const {
  if (values.empty()) throw std::invalid_argument("mean of empty data");
  return sum() / static_cast<double>(values.size());
}

void validate_data(const ModelSpec& model, const DataSet& data) {
  for (double v : data.values) {
    switch (model.family) {
      case Family::poisson:
        if (!is_count(v)) {
          throw std::invalid_argument("poisson data must be nonnegative integers");
        }
        break;
      case Family::binomial:
        if (!is_count(v) || v > model.trials) {
          throw std::invalid_argument("binomial data must be integers in {0,...,m}");
        }
        break;
      case Family::gaussian:
        if (!std::isfinite(v)) {
          throw std::invalid_argument("gaussian data must be finite");
        }
        break;
    }
  }
}

SuffStats make_suff_stats(const ModelSpec& model, const DataSet& data) {
  validate_data(model, data);
  SuffStats ss;
  ss.n = data.n();
  ss.sum = data.sum();
  ss.sum_sq = data.sum_sq();
  switch (model.family) {
    case Family::poisson:
      for (double v : data.values) ss.log_const -= log_gamma(v + 1.0);
      break;
    case Family::binomial:
      for (double v : data.values) ss.log_const += log_choose(model.trials, v);
      break;
    case Family::gaussian:
      ss.log_const = -0.5 * static_cast<double>(ss.n) *
                     (kLog2Pi + std::log(model.obs_variance));
      break;
  }
  return ss;
}

double log_likelihood(const ModelSpec& model, const SuffStats& ss, double param) {
  if (!model.in_parameter_space(param)) {
    throw std::domain_error("parameter outside the parameter space");
  }
  if (ss.n == 0) return 0.0;
  const double n = static_cast<double>(ss.n);
  switch (model.family) {
    case Family::poisson:
      return ss.log_const - n * param + ss.sum * std::log(param);
    case Family::binomial: {
      const double failures = n * model.trials - ss.sum;
      double ll = ss.log_const;
      ll += (ss.sum > 0.0) ? ss.sum * std::log(param) : 0.0;
      ll += (failures > 0.0) ? failures * std::log1p(-param) : 0.0;
      return ll;
    }
    case Family::gaussian:
      return ss.log_const -
             (ss.sum_sq - 2.0 * param * ss.sum + n * param * param) / (2.0 * model.obs_variance);
  }
  throw std::logic_error("unreachable family");
}

double log_likelihood(const ModelSpec& model, double param, const DataSet& data) {
  return log_likelihood(model, make_suff_stats(model, data), param);
}

PriorSpec posterior_update(const ModelSpec& model, const DataSet& data) {
  validate_data(model, data);
  const double n = static_cast<double>(data.n());
  const double s = data.sum();

  if (model.prior.kind == PriorKind::point_mass) {
    return model.prior;  // degenerate prior stays put
  }

  switch (model.family) {
    case Family::poisson: {
      double shape0, rate0;
      if (model.prior.kind == PriorKind::gamma) {
        shape0 = model.prior.shape();
        rate0 = model.prior.rate();
      } else if (model.prior.kind == PriorKind::improper_power) {
        shape0 = model.prior.exponent() + 1.0;
        rate0 = 0.0;
      } else {
        throw std::invalid_argument("poisson model requires a gamma-type prior");
      }
      const double shape = shape0 + s;
      const double rate = rate0 + n;
      if (!(shape > 0.0) || !(rate > 0.0)) {
        throw ImproperPosteriorError("posterior gamma(" + num(shape) + "," + num(rate) +
                                     ") not integrable");
      }
      return PriorSpec::Gamma(shape, rate);
    }
    case Family::binomial: {
      if (model.prior.kind != PriorKind::beta) {
        throw std::invalid_argument("binomial model requires a beta prior");
      }
      const double a = model.prior.a() + s;
      const double b = model.prior.b() + n * model.trials - s;
      if (!(a > 0.0) || !(b > 0.0)) {
        throw ImproperPosteriorError("posterior beta(" + num(a) + "," + num(b) +
                                     ") not integrable");
      }
      return PriorSpec::Beta(a, b);
    }
    case Family::gaussian: {
      const double data_precision = n / model.obs_variance;
      if (model.prior.kind == PriorKind::gaussian) {
        const double prior_precision = 1.0 / model.prior.variance();
        const double precision = prior_precision + data_precision;
        const double mean =
            (model.prior.mean() * prior_precision + s / model.obs_variance) / precision;
        return PriorSpec::Gaussian(mean, 1.0 / precision);
      }
      if (model.prior.kind == PriorKind::improper_power) {
        if (model.prior.exponent() != 0.0) {
          throw std::invalid_argument("gaussian improper prior must be flat (exponent 0)");
        }
        if (n < 1.0) {
          throw ImproperPosteriorError("flat gaussian prior with no data is not integrable");
        }
        return PriorSpec::Gaussian(s / n, model.obs_variance / n);
      }
      throw std::invalid_argument("gaussian model requires a gaussian-type prior");
    }
  }
  throw std::logic_error("unreachable family");
}

double dist_mean(const PriorSpec& dist) {
  switch (dist.kind) {
    case PriorKind::gamma:
      if (!dist.proper()) throw ImproperDistributionError("mean of improper gamma");
      return dist.shape() / dist.rate();
    case PriorKind::beta:
      if (!dist.proper()) throw ImproperDistributionError("mean of improper beta");
      return dist.a() / (dist.a() + dist.b());
    case PriorKind::gaussian: return dist.mean();
    case PriorKind::point_mass: return dist.value();
    case PriorKind::improper_power:
      throw ImproperDistributionError("mean of improper power prior");
  }
  throw std::logic_error("unreachable prior kind");
}

double dist_mode(const PriorSpec& dist) {
  switch (dist.kind) {
    case PriorKind::gamma: {
      if (!dist.proper()) throw ImproperDistributionError("mode of improper gamma");
      if (dist.shape() < 1.0) {
        throw std::invalid_argument("gamma mode at the boundary for shape < 1");
      }
      return (dist.shape() - 1.0) / dist.rate();
    }
    case PriorKind::beta: {
      if (!dist.proper()) throw ImproperDistributionError("mode of improper beta");
      if (!(dist.a() > 1.0) || !(dist.b() > 1.0)) {
        throw std::invalid_argument("beta mode not interior for a <= 1 or b <= 1");
      }
      return (dist.a() - 1.0) / (dist.a() + dist.b() - 2.0);
    }
    case PriorKind::gaussian: return dist.mean();
    case PriorKind::point_mass: return dist.value();
    case PriorKind::improper_power:
      throw ImproperDistributionError("mode of improper power prior");
  }
  throw std::logic_error("unreachable prior kind");
}

double draw_param(const PriorSpec& dist, std::mt19937_64& engine) {
  switch (dist.kind) {
    case PriorKind::gamma: {
      if (!dist.proper()) throw ImproperDistributionError("sampling improper gamma");
      std::gamma_distribution<double> g(dist.shape(), 1.0 / dist.rate());
      for (int attempt = 0; attempt < 1000; ++attempt) {
        const double v = g(engine);
        if (v > 0.0 && std::isfinite(v)) return v;
      }
      throw std::runtime_error("gamma sampler failed to produce an interior draw");
    }
    case PriorKind::beta: {
      if (!dist.proper()) throw ImproperDistributionError("sampling improper beta");
      std::gamma_distribution<double> ga(dist.a(), 1.0);
      std::gamma_distribution<double> gb(dist.b(), 1.0);
      for (int attempt = 0; attempt < 1000; ++attempt) {
        const double x = ga(engine);
        const double y = gb(engine);
        const double p = x / (x + y);
        if (p > 0.0 && p < 1.0 && std::isfinite(p)) return p;
      }
      throw std::runtime_error("beta sampler failed to produce an interior draw");
    }
    case PriorKind::gaussian: {
      std::normal_distribution<double> nd(dist.mean(), std::sqrt(dist.variance()));
      return nd(engine);
    }
    case PriorKind::point_mass:
      return dist.value();
    case PriorKind::improper_power:
      throw ImproperDistributionError("sampling improper power prior");
  }
  throw std::logic_error("unreachable prior kind");
}

ParamDraws sample(const ModelSpec& model, const PriorSpec& dist, std::size_t count,
                  std::uint64_t seed, DrawSource source) {
  if (!dist.proper()) {
    throw ImproperDistributionError("cannot sample from improper distribution " + dist.describe());
  }
  ParamDraws draws;
  draws.source = source;
  draws.seed = seed;
  draws.model_id = model.id();
  draws.values.reserve(count);
  auto engine = make_engine(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const double v = draw_param(dist, engine);
    if (!model.in_parameter_space(v)) {
      throw std::logic_error("draw outside the parameter space of " + model.id());
    }
    draws.values.push_back(v);
  }
  return draws;
}

ParamDraws sample_posterior(const ModelSpec& model, const DataSet& data, std::size_t count,
                            std::uint64_t seed) {
  return sample(model, posterior_update(model, data), count, seed, DrawSource::posterior);
}

ParamDraws sample_prior(const ModelSpec& model, std::size_t count, std::uint64_t seed) {
  return sample(model, model.prior, count, seed, DrawSource::prior);
}

double log_marginal_likelihood(const ModelSpec& model, const DataSet& data) {
  if (!model.prior.proper()) {
    throw ImproperPriorError("the integrated likelihood does not exist under improper prior " +
                             model.prior.describe());
  }
  const SuffStats ss = make_suff_stats(model, data);
  const double n = static_cast<double>(ss.n);

  if (model.prior.kind == PriorKind::point_mass) {
    return log_likelihood(model, ss, model.prior.value());
  }
  if (ss.n == 0) return 0.0;  // empty product integrates the prior to 1

  switch (model.family) {
    case Family::poisson: {
      const double a = model.prior.shape();
      const double r = model.prior.rate();
      return ss.log_const + a * std::log(r) - log_gamma(a) + log_gamma(a + ss.sum) -
             (a + ss.sum) * std::log(r + n);
    }
    case Family::binomial: {
      const double a = model.prior.a();
      const double b = model.prior.b();
      const double s = ss.sum;
      return ss.log_const + log_beta_fn(a + s, b + n * model.trials - s) - log_beta_fn(a, b);
    }
    case Family::gaussian: {
      const double tau2 = model.prior.variance();
      const double mu0 = model.prior.mean();
      const double sigma2 = model.obs_variance;
      const double A = 1.0 / tau2 + n / sigma2;
      const double B = mu0 / tau2 + ss.sum / sigma2;
      const double C = ss.sum_sq / sigma2 + mu0 * mu0 / tau2;
      return -0.5 * n * (kLog2Pi + std::log(sigma2)) - 0.5 * std::log(tau2 * A) -
             0.5 * (C - B * B / A);
    }
  }
  throw std::logic_error("unreachable family");
}

double marginal_likelihood(const ModelSpec& model, const DataSet& data) {
  return std::exp(log_marginal_likelihood(model, data));
}

PriorSpec data_centered_distribution(const ModelSpec& model, const DataSet& data) {
  validate_data(model, data);
  const double n = static_cast<double>(data.n());
  const double s = data.sum();
  switch (model.family) {
    case Family::poisson:
      return PriorSpec::Gamma(1.0 + s, 1.0 + n);
    case Family::binomial:
      return PriorSpec::Beta(1.0 + s, 1.0 + n * model.trials - s);
    case Family::gaussian: {
      if (data.n() == 0) return PriorSpec::Gaussian(0.0, model.obs_variance);
      return PriorSpec::Gaussian(s / n, model.obs_variance / n);
    }
  }
  throw std::logic_error("unreachable family");
}

}  // namespace bmc

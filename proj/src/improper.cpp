#include "bmc/improper.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "bmc/special.hpp"

namespace bmc {

void TrainingSplit::validate(std::size_t n) const {
  if (training_indices.empty()) {
    throw std::invalid_argument("training sample must be nonempty");
  }
  std::set<std::size_t> seen;
  for (std::size_t idx : training_indices) {
    if (idx >= n) throw std::invalid_argument("training index out of range");
    if (!seen.insert(idx).second) throw std::invalid_argument("duplicate training index");
  }
  if (seen.size() == n) {
    throw std::invalid_argument("training sample must be a proper subset");
  }
}

std::vector<std::size_t> TrainingSplit::remainder(std::size_t n) const {
  std::set<std::size_t> in(training_indices.begin(), training_indices.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!in.count(i)) out.push_back(i);
  }
  return out;
}

std::vector<TrainingSplit> singleton_splits(std::size_t n) {
  std::vector<TrainingSplit> splits;
  for (std::size_t i = 0; i < n; ++i) {
    splits.push_back(TrainingSplit{{i}});
  }
  return splits;
}

namespace {
DataSet subset(const DataSet& data, const std::vector<std::size_t>& indices) {
  DataSet out;
  out.values.reserve(indices.size());
  for (std::size_t idx : indices) out.values.push_back(data.values[idx]);
  return out;
}
}  // namespace

PriorSpec training_posterior(const ModelSpec& model, const DataSet& data,
                             const TrainingSplit& split) {
  validate_data(model, data);
  split.validate(data.n());

  PriorSpec intermediate;
  try {
    intermediate = posterior_update(model, subset(data, split.training_indices));
  } catch (const ImproperPosteriorError& e) {
    throw ImproperIntermediateError(std::string("training sample does not regularize the prior: ") +
                                    e.what());
  }
  ModelSpec staged = model;
  staged.prior = intermediate;
  return posterior_update(staged, subset(data, split.remainder(data.n())));
}

double training_invariance_check(const ModelSpec& model, const DataSet& data,
                                 const std::vector<TrainingSplit>& splits) {
  if (splits.empty()) throw std::invalid_argument("need at least one split");
  std::vector<PriorSpec> posts;
  posts.reserve(splits.size());
  for (const auto& split : splits) {
    posts.push_back(training_posterior(model, data, split));
  }
  double max_diff = 0.0;
  for (std::size_t i = 1; i < posts.size(); ++i) {
    if (posts[i].kind != posts[0].kind) {
      throw std::logic_error("split posteriors landed in different families");
    }
    max_diff = std::max(max_diff, std::fabs(posts[i].p1 - posts[0].p1));
    max_diff = std::max(max_diff, std::fabs(posts[i].p2 - posts[0].p2));
  }
  return max_diff;
}

NoJointReport no_joint_distribution_demo(const ModelSpec& model,
                                         const std::vector<std::uint64_t>& truncations) {
  if (model.family != Family::poisson) {
    throw std::invalid_argument("the predictive-mass demo is defined for the poisson family");
  }
  if (truncations.empty()) throw std::invalid_argument("need at least one truncation point");
  for (std::size_t i = 1; i < truncations.size(); ++i) {
    if (truncations[i] <= truncations[i - 1]) {
      throw std::invalid_argument("truncations must be strictly increasing");
    }
  }

  // Per-x prior-predictive term for a single observation. Proper gamma priors
  // use the normalized marginal; improper priors drop the (nonexistent)
  // normalizer: integral of e^{-l} l^x / x! * l^{shape0 - 1} dl over (0, inf).
  double shape0 = 0.0;
  double rate0 = 0.0;
  bool proper = false;
  if (model.prior.kind == PriorKind::gamma) {
    shape0 = model.prior.shape();
    rate0 = model.prior.rate();
    proper = model.prior.proper();
  } else if (model.prior.kind == PriorKind::improper_power) {
    shape0 = model.prior.exponent() + 1.0;
    rate0 = 0.0;
  } else {
    throw std::invalid_argument("poisson demo requires a gamma or improper power prior");
  }

  NoJointReport report;
  report.truncations = truncations;
  report.prior_proper = proper;
  const double log_norm = proper ? shape0 * std::log(rate0) - log_gamma(shape0) : 0.0;

  double sum = 0.0;
  std::uint64_t next = 0;
  for (std::uint64_t x = 1; x <= truncations.back(); ++x) {
    const double xd = static_cast<double>(x);
    if (shape0 + xd > 0.0) {
      sum += std::exp(log_norm + log_gamma(shape0 + xd) - log_gamma(xd + 1.0) -
                      (shape0 + xd) * std::log(rate0 + 1.0));
    }
    if (x == truncations[next]) {
      report.partial_sums.push_back(sum);
      ++next;
    }
  }
  return report;
}

ProprietyResult propriety_check(const ModelSpec& model, const DataSet& data) {
  try {
    const PriorSpec post = posterior_update(model, data);
    return {true, "posterior " + post.describe() + " proper"};
  } catch (const ImproperPosteriorError& e) {
    return {false, e.what()};
  }
}

}  // namespace bmc

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bmc/model.hpp"

namespace bmc {

// A nonempty proper subset of the observation indices used to regularize an
// improper prior; the remainder carries the rest of the update.
struct TrainingSplit {
  std::vector<std::size_t> training_indices;

  void validate(std::size_t n) const;
  std::vector<std::size_t> remainder(std::size_t n) const;
};

std::vector<TrainingSplit> singleton_splits(std::size_t n);

// Two-stage conjugate update: prior + training sample (must yield a proper
// intermediate, else ImproperIntermediateError), then the remainder. Equals
// the single-stage formal posterior whenever that is integrable.
PriorSpec training_posterior(const ModelSpec& model, const DataSet& data,
                             const TrainingSplit& split);

// Maximum absolute hyperparameter discrepancy of training_posterior across
// splits; exactly 0 for conjugate families.
double training_invariance_check(const ModelSpec& model, const DataSet& data,
                                 const std::vector<TrainingSplit>& splits);

// Partial sums of the (possibly unnormalized) prior-predictive mass over the
// single-observation data space x in {1,...,K}. Improper priors make the sums
// grow without bound: there is no joint law on (x, theta) to normalize.
struct NoJointReport {
  std::vector<std::uint64_t> truncations;
  std::vector<double> partial_sums;
  bool prior_proper = false;
};

NoJointReport no_joint_distribution_demo(const ModelSpec& model,
                                         const std::vector<std::uint64_t>& truncations);

struct ProprietyResult {
  bool proper = false;
  std::string reason;
};

// True iff the formal posterior of model given data is integrable; the reason
// names the failing (or passing) hyperparameter condition.
ProprietyResult propriety_check(const ModelSpec& model, const DataSet& data);

}  // namespace bmc

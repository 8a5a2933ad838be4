#pragma once

#include <stdexcept>
#include <string>

namespace bmc {

// A prior that does not integrate to a finite value was used where a proper
// one is required (marginal likelihoods, Bayes factors, prior expectations).
struct ImproperPriorError : std::runtime_error {
  explicit ImproperPriorError(const std::string& what) : std::runtime_error(what) {}
};

// A conjugate update produced a non-integrable posterior (e.g. the Haldane
// prior with no observed successes).
struct ImproperPosteriorError : std::runtime_error {
  explicit ImproperPosteriorError(const std::string& what) : std::runtime_error(what) {}
};

// Sampling was requested from a distribution that is not proper.
struct ImproperDistributionError : std::runtime_error {
  explicit ImproperDistributionError(const std::string& what) : std::runtime_error(what) {}
};

// A training sample failed to regularize an improper prior.
struct ImproperIntermediateError : std::runtime_error {
  explicit ImproperIntermediateError(const std::string& what) : std::runtime_error(what) {}
};

// A Monte Carlo summary was requested over zero draws.
struct EmptyDrawsError : std::runtime_error {
  explicit EmptyDrawsError(const std::string& what) : std::runtime_error(what) {}
};

// Every probe point of a minimization bracket had infinite objective value.
struct AllInfiniteError : std::runtime_error {
  explicit AllInfiniteError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bmc

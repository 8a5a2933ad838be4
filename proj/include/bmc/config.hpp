#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bmc/asymptotics.hpp"
#include "bmc/joint.hpp"
#include "bmc/model.hpp"

namespace bmc {

// A declared model pair plus the observations it is judged on.
struct PairExperimentConfig {
  ModelPairConfig pair;
  DataSet data;
  std::uint64_t seed = 42;
};

struct ScenarioConfig {
  AsymptoticScenario scenario;
};

// Gaussian mean-test cases: one dataset of n observations pinned at each xbar.
struct EmbeddedConfig {
  double obs_variance = 1.0;
  double null_value = 0.0;
  PriorSpec prior = PriorSpec::Gaussian(0.0, 1e6);
  int n = 10;
  std::vector<double> xbar_cases = {0.2, 0.5, 1.0};
  std::uint64_t seed = 42;
};

PairExperimentConfig parse_pair_config(const std::string& text);
PairExperimentConfig load_pair_config(const std::string& path);
std::string emit_pair_config(const PairExperimentConfig& config);

ScenarioConfig parse_scenario_config(const std::string& text);
ScenarioConfig load_scenario_config(const std::string& path);
std::string emit_scenario_config(const ScenarioConfig& config);

EmbeddedConfig parse_embedded_config(const std::string& text);
EmbeddedConfig load_embedded_config(const std::string& path);
std::string emit_embedded_config(const EmbeddedConfig& config);

// Shipped defaults (identical to the files under configs/).
PairExperimentConfig default_fig2_config();
PairExperimentConfig default_dominated_pair_config();
ScenarioConfig default_consistency_config();
EmbeddedConfig default_embedded_config();

}  // namespace bmc

#include "bmc/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace bmc {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read config file " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

PriorSpec parse_prior(const ordered_json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "gamma") return PriorSpec::Gamma(j.at("shape"), j.at("rate"));
  if (kind == "beta") return PriorSpec::Beta(j.at("a"), j.at("b"));
  if (kind == "gaussian") return PriorSpec::Gaussian(j.at("mean"), j.at("variance"));
  if (kind == "point_mass") return PriorSpec::PointMass(j.at("value"));
  if (kind == "improper_power") return PriorSpec::ImproperPower(j.at("exponent"));
  throw std::invalid_argument("unknown prior kind '" + kind + "'");
}

ordered_json prior_to_json(const PriorSpec& p) {
  ordered_json j;
  switch (p.kind) {
    case PriorKind::gamma:
      j["kind"] = "gamma";
      j["shape"] = p.p1;
      j["rate"] = p.p2;
      break;
    case PriorKind::beta:
      j["kind"] = "beta";
      j["a"] = p.p1;
      j["b"] = p.p2;
      break;
    case PriorKind::gaussian:
      j["kind"] = "gaussian";
      j["mean"] = p.p1;
      j["variance"] = p.p2;
      break;
    case PriorKind::point_mass:
      j["kind"] = "point_mass";
      j["value"] = p.p1;
      break;
    case PriorKind::improper_power:
      j["kind"] = "improper_power";
      j["exponent"] = p.p1;
      break;
  }
  return j;
}

ModelSpec parse_model(const ordered_json& j) {
  const std::string family = j.at("family").get<std::string>();
  const PriorSpec prior = parse_prior(j.at("prior"));
  const std::string label = j.value("label", std::string{});
  if (family == "poisson") return ModelSpec::Poisson(prior, label);
  if (family == "binomial") return ModelSpec::Binomial(j.at("m").get<int>(), prior, label);
  if (family == "gaussian") {
    return ModelSpec::Gaussian(j.at("variance").get<double>(), prior, label);
  }
  throw std::invalid_argument("unknown family '" + family + "'");
}

ordered_json model_to_json(const ModelSpec& m) {
  ordered_json j;
  j["family"] = family_name(m.family);
  if (m.family == Family::binomial) j["m"] = m.trials;
  if (m.family == Family::gaussian) j["variance"] = m.obs_variance;
  j["prior"] = prior_to_json(m.prior);
  if (!m.label.empty()) j["label"] = m.label;
  return j;
}

DataSet parse_data(const ordered_json& j) {
  DataSet d;
  for (const auto& v : j) d.values.push_back(v.get<double>());
  return d;
}

// Pseudo-priors accept an explicit prior object, the string "data_centered",
// or null/absent for the model's own prior.
PriorSpec resolve_pseudo(const ordered_json& entry, const ModelSpec& model, const DataSet& data) {
  if (entry.is_null()) {
    if (!model.prior.proper()) {
      throw ImproperDistributionError("model prior is improper: pseudo_prior must be given");
    }
    return model.prior;
  }
  if (entry.is_string()) {
    if (entry.get<std::string>() == "data_centered") {
      return data_centered_distribution(model, data);
    }
    throw std::invalid_argument("pseudo_prior string must be 'data_centered'");
  }
  return parse_prior(entry);
}

ModelPairConfig parse_pair(const ordered_json& j, const DataSet& data) {
  ModelPairConfig pair;
  pair.model1 = parse_model(j.at("model1"));
  pair.model2 = parse_model(j.at("model2"));
  if (j.contains("prior_prob")) {
    const auto& pp = j.at("prior_prob");
    if (!pp.is_array() || pp.size() != 2) {
      throw std::invalid_argument("prior_prob must be a two-element array");
    }
    pair.prior_prob1 = pp[0].get<double>();
    pair.prior_prob2 = pp[1].get<double>();
  }
  ordered_json ps1;
  ordered_json ps2;
  if (j.contains("pseudo_prior")) {
    const auto& ps = j.at("pseudo_prior");
    if (!ps.is_array() || ps.size() != 2) {
      throw std::invalid_argument("pseudo_prior must be a two-element array");
    }
    ps1 = ps[0];
    ps2 = ps[1];
  }
  pair.pseudo_prior1 = resolve_pseudo(ps1, pair.model1, data);
  pair.pseudo_prior2 = resolve_pseudo(ps2, pair.model2, data);
  pair.validate();
  return pair;
}

ordered_json pair_to_json(const ModelPairConfig& pair) {
  ordered_json j;
  j["model1"] = model_to_json(pair.model1);
  j["model2"] = model_to_json(pair.model2);
  j["prior_prob"] = {pair.prior_prob1, pair.prior_prob2};
  j["pseudo_prior"] = {prior_to_json(pair.pseudo_prior1), prior_to_json(pair.pseudo_prior2)};
  return j;
}

FamilyMember parse_member(const ordered_json& j) {
  const std::string family = j.at("family").get<std::string>();
  if (family == "poisson") return FamilyMember::Poisson(j.at("param"));
  if (family == "binomial") return FamilyMember::Binomial(j.at("m").get<int>(), j.at("param"));
  if (family == "gaussian") {
    return FamilyMember::Gaussian(j.at("param"), j.at("variance"));
  }
  throw std::invalid_argument("unknown family '" + family + "'");
}

ordered_json member_to_json(const FamilyMember& m) {
  ordered_json j;
  j["family"] = family_name(m.family);
  if (m.family == Family::binomial) j["m"] = m.trials;
  if (m.family == Family::gaussian) j["variance"] = m.variance;
  j["param"] = m.param;
  return j;
}

}  // namespace

PairExperimentConfig parse_pair_config(const std::string& text) {
  const auto j = ordered_json::parse(text);
  PairExperimentConfig cfg;
  cfg.data = parse_data(j.at("data"));
  cfg.pair = parse_pair(j, cfg.data);
  cfg.seed = j.value("seed", 42ULL);
  validate_data(cfg.pair.model1, cfg.data);
  validate_data(cfg.pair.model2, cfg.data);
  return cfg;
}

PairExperimentConfig load_pair_config(const std::string& path) {
  return parse_pair_config(slurp(path));
}

std::string emit_pair_config(const PairExperimentConfig& config) {
  ordered_json j = pair_to_json(config.pair);
  j["data"] = config.data.values;
  j["seed"] = config.seed;
  return j.dump(2) + "\n";
}

ScenarioConfig parse_scenario_config(const std::string& text) {
  const auto j = ordered_json::parse(text);
  ScenarioConfig cfg;
  cfg.scenario.truth = parse_member(j.at("truth"));
  cfg.scenario.pair = parse_pair(j, DataSet{});
  cfg.scenario.n_grid = j.at("n_grid").get<std::vector<int>>();
  cfg.scenario.replications = j.at("replications").get<int>();
  cfg.scenario.seed = j.value("seed", 42ULL);
  cfg.scenario.draws_per_cell = j.value("draws_per_cell", 2000ULL);
  return cfg;
}

ScenarioConfig load_scenario_config(const std::string& path) {
  return parse_scenario_config(slurp(path));
}

std::string emit_scenario_config(const ScenarioConfig& config) {
  ordered_json j;
  j["truth"] = member_to_json(config.scenario.truth);
  const ordered_json pj = pair_to_json(config.scenario.pair);
  for (const auto& [key, value] : pj.items()) j[key] = value;
  j["n_grid"] = config.scenario.n_grid;
  j["replications"] = config.scenario.replications;
  j["seed"] = config.scenario.seed;
  j["draws_per_cell"] = config.scenario.draws_per_cell;
  return j.dump(2) + "\n";
}

EmbeddedConfig parse_embedded_config(const std::string& text) {
  const auto j = ordered_json::parse(text);
  EmbeddedConfig cfg;
  cfg.obs_variance = j.value("variance", 1.0);
  cfg.null_value = j.value("null_value", 0.0);
  if (j.contains("prior")) cfg.prior = parse_prior(j.at("prior"));
  cfg.n = j.value("n", 10);
  if (j.contains("xbar_cases")) cfg.xbar_cases = j.at("xbar_cases").get<std::vector<double>>();
  cfg.seed = j.value("seed", 42ULL);
  if (cfg.n < 1 || cfg.xbar_cases.empty()) {
    throw std::invalid_argument("embedded config needs n >= 1 and at least one xbar case");
  }
  return cfg;
}

EmbeddedConfig load_embedded_config(const std::string& path) {
  return parse_embedded_config(slurp(path));
}

std::string emit_embedded_config(const EmbeddedConfig& config) {
  ordered_json j;
  j["family"] = "gaussian";
  j["variance"] = config.obs_variance;
  j["null_value"] = config.null_value;
  j["prior"] = prior_to_json(config.prior);
  j["n"] = config.n;
  j["xbar_cases"] = config.xbar_cases;
  j["seed"] = config.seed;
  return j.dump(2) + "\n";
}

PairExperimentConfig default_fig2_config() {
  PairExperimentConfig cfg;
  cfg.data.values = {3.0};
  cfg.pair = make_pair_config(
      ModelSpec::Binomial(5, PriorSpec::Beta(1.0, 1.0), "binomial"),
      ModelSpec::Poisson(PriorSpec::Gamma(1.0, 1.0), "poisson"));
  cfg.seed = 42;
  return cfg;
}

PairExperimentConfig default_dominated_pair_config() {
  PairExperimentConfig cfg;
  cfg.data.values = {0.1, -0.2, 0.05, 0.15};
  cfg.pair = make_pair_config(
      ModelSpec::Gaussian(1.0, PriorSpec::PointMass(0.0), "null-at-zero"),
      ModelSpec::Gaussian(1.0, PriorSpec::Gaussian(5.0, 0.01), "far-informative"));
  cfg.seed = 42;
  return cfg;
}

ScenarioConfig default_consistency_config() {
  ScenarioConfig cfg;
  cfg.scenario.truth = FamilyMember::Gaussian(0.5, 1.0);
  cfg.scenario.pair = make_pair_config(
      ModelSpec::Gaussian(1.0, PriorSpec::Gaussian(0.0, 10.0), "free-mean"),
      ModelSpec::Gaussian(1.0, PriorSpec::PointMass(0.0), "point-null"));
  cfg.scenario.n_grid = {10, 50, 200, 500};
  cfg.scenario.replications = 50;
  cfg.scenario.seed = 42;
  cfg.scenario.draws_per_cell = 2000;
  return cfg;
}

EmbeddedConfig default_embedded_config() {
  return EmbeddedConfig{};
}

}  // namespace bmc

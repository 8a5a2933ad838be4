#include "bmc/experiments.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "bmc/rng.hpp"
#include "bmc/version.hpp"

namespace bmc {

namespace {

// Subcommand tags feeding the per-experiment seed derivation.
constexpr std::uint64_t kTagFig2 = 101;
constexpr std::uint64_t kTagEmbedded = 104;

std::string meta_header(const EmitMeta& meta) {
  std::ostringstream os;
  os << "# version = " << kVersion << "\n";
  os << "# subcommand = " << meta.subcommand << "\n";
  os << "# seed = " << meta.seed << "\n";
  os << "# draws = " << meta.draws << "\n";
  os << "# rng = mt19937_64 seeded per (subcommand, user seed) via splitmix64\n";
  return os.str();
}

bool looks_numeric(const std::string& s) {
  if (s.empty()) return false;
  char* end = nullptr;
  std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

}  // namespace

void Table::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns.size()) {
    throw std::logic_error("table row width mismatch");
  }
  rows.push_back(std::move(cells));
}

std::string table_to_csv(const Table& table, const EmitMeta& meta) {
  std::ostringstream os;
  os << meta_header(meta);
  for (const auto& [key, value] : table.notes) {
    os << "# " << key << " = " << value << "\n";
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    os << (c ? "," : "") << table.columns[c];
  }
  os << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << (c ? "," : "") << row[c];
    }
    os << "\n";
  }
  return os.str();
}

std::string table_to_json(const Table& table, const EmitMeta& meta) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"version\": \"" << kVersion << "\",\n";
  os << "  \"subcommand\": \"" << meta.subcommand << "\",\n";
  os << "  \"seed\": " << meta.seed << ",\n";
  os << "  \"draws\": " << meta.draws << ",\n";
  for (const auto& [key, value] : table.notes) {
    os << "  \"" << key << "\": " << (looks_numeric(value) ? value : "\"" + value + "\"") << ",\n";
  }
  os << "  \"rows\": [\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    os << "    {";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      const std::string& cell = table.rows[r][c];
      os << (c ? ", " : "") << "\"" << table.columns[c]
         << "\": " << (looks_numeric(cell) ? cell : "\"" + cell + "\"");
    }
    os << "}" << (r + 1 < table.rows.size() ? "," : "") << "\n";
  }
  os << "  ]\n}\n";
  return os.str();
}

Fig2Result run_fig2(const PairExperimentConfig& config, std::uint64_t seed, std::size_t draws) {
  if (draws < 1000) {
    throw std::invalid_argument("fig2 needs at least 1000 draws");
  }
  Fig2Result result;
  const ModelPairConfig& pair = config.pair;

  const LrSample product =
      lr_product_draws(pair.model1, pair.model2, config.data, draws, derive_seed(seed, kTagFig2, 1));
  const LrSample joint = lr_joint_draws(pair, config.data, draws, derive_seed(seed, kTagFig2, 2));

  const double p_prod = product.pr_exceeds_one();
  const double p_joint = joint.pr_exceeds_one();
  const double n = static_cast<double>(draws);
  result.gap = p_joint - p_prod;
  result.gap_se = std::sqrt(p_prod * (1.0 - p_prod) / n + p_joint * (1.0 - p_joint) / n);
  result.directional_pass = result.gap > kZ99 * result.gap_se;

  const auto [lo, hi] = pooled_quantile_range(product.log_ratios, joint.log_ratios);
  result.hist_product = make_histogram("product", product.log_ratios, lo, hi);
  result.hist_joint = make_histogram("joint", joint.log_ratios, lo, hi);

  ComparisonReport& report = result.report;
  report.model1_id = pair.model1.id();
  report.model2_id = pair.model2.id();
  report.marginal1 = marginal_likelihood(pair.model1, config.data);
  report.marginal2 = marginal_likelihood(pair.model2, config.data);
  report.bayes_factor = bayes_factor(pair.model1, pair.model2, config.data);
  const auto probs = posterior_model_probs(pair, config.data);
  report.post_prob1 = probs.first;
  report.post_prob2 = probs.second;
  report.dic1 = dic(pair.model1, config.data,
                    sample_posterior(pair.model1, config.data, draws, derive_seed(seed, kTagFig2, 3)));
  report.dic2 = dic(pair.model2, config.data,
                    sample_posterior(pair.model2, config.data, draws, derive_seed(seed, kTagFig2, 4)));
  report.pr_lr_gt1_product = p_prod;
  report.pr_lr_gt1_joint = p_joint;
  // Pr(LR > 1) over the joint draws is exactly the decision probability
  // Pr[f2 < f1 | x], so the chosen model falls out of the same sample.
  report.decision = p_joint > 0.5 ? 1 : 2;
  report.draw_count = static_cast<std::int64_t>(draws);
  report.seed = seed;
  report.validate();
  return result;
}

std::vector<std::string> write_fig2(const Fig2Result& result, const std::string& out_dir,
                                    EmitFormat format, const EmitMeta& meta) {
  std::vector<std::string> files;
  const std::string base = out_dir + "/fig2_report";
  if (format == EmitFormat::structured_record) {
    files.push_back(base + ".json");
    write_text_atomic(files.back(), report_to_json(result.report, meta));
  } else {
    files.push_back(base + ".csv");
    write_text_atomic(files.back(), report_to_csv(result.report, meta));
  }
  files.push_back(out_dir + "/fig2_hist_product.csv");
  write_text_atomic(files.back(), histogram_to_csv(result.hist_product, meta));
  files.push_back(out_dir + "/fig2_hist_joint.csv");
  write_text_atomic(files.back(), histogram_to_csv(result.hist_joint, meta));
  return files;
}

bool PredcheckParams::is_default() const {
  return successes == 1 && trials == 10 && future_trials == 20 && threshold == 2 &&
         prior == PriorSpec::Beta(1.0, 1.0);
}

PredcheckResult run_predcheck(const PredcheckParams& params) {
  PredcheckResult result;
  result.value = beta_binomial_predictive(params.successes, params.trials, params.future_trials,
                                          params.threshold, params.prior);
  result.is_default = params.is_default();
  result.pass = std::fabs(result.value - 0.447) <= 0.001;
  return result;
}

std::vector<std::string> write_predcheck(const PredcheckResult& result, const std::string& out_dir,
                                         EmitFormat format, const EmitMeta& meta) {
  char value6[32];
  std::snprintf(value6, sizeof(value6), "%.6f", result.value);

  Table table;
  table.columns = {"field", "value"};
  table.add_row({"predictive_probability", value6});
  if (result.is_default) {
    table.add_row({"target", "0.447"});
    table.add_row({"tolerance", "0.001"});
    table.add_row({"verdict", result.pass ? "PASS" : "FAIL"});
  }
  std::vector<std::string> files;
  if (format == EmitFormat::structured_record) {
    files.push_back(out_dir + "/predcheck.json");
    write_text_atomic(files.back(), table_to_json(table, meta));
  } else {
    files.push_back(out_dir + "/predcheck.csv");
    write_text_atomic(files.back(), table_to_csv(table, meta));
  }
  return files;
}

LindleyResult run_lindley(const std::vector<double>& tau_grid, double xbar, int n,
                          double obs_variance, double null_value) {
  if (n < 1) throw std::invalid_argument("lindley sweep needs n >= 1");
  DataSet data;
  data.values.assign(static_cast<std::size_t>(n), xbar);  // mean-pinned dataset
  LindleyResult result;
  result.rows = lindley_sweep(null_value, data, tau_grid, obs_variance);
  if (result.rows.size() < 2) {
    result.verdict = "n/a";
  } else {
    bool increasing = true;
    for (std::size_t i = 1; i < result.rows.size(); ++i) {
      if (!(result.rows[i].second > result.rows[i - 1].second)) increasing = false;
    }
    result.verdict = increasing ? "strictly-increasing" : "not-monotone";
  }
  return result;
}

std::vector<std::string> write_lindley(const LindleyResult& result, const std::string& out_dir,
                                       EmitFormat format, const EmitMeta& meta) {
  Table table;
  table.columns = {"tau", "bf_null_over_full"};
  table.notes.emplace_back("verdict", result.verdict);
  for (const auto& [tau, bf] : result.rows) {
    table.add_row({format_sig(tau), format_sig(bf)});
  }
  std::vector<std::string> files;
  if (format == EmitFormat::structured_record) {
    files.push_back(out_dir + "/lindley.json");
    write_text_atomic(files.back(), table_to_json(table, meta));
  } else {
    files.push_back(out_dir + "/lindley.csv");
    write_text_atomic(files.back(), table_to_csv(table, meta));
  }
  return files;
}

std::vector<EmbeddedCaseResult> run_embedded(const EmbeddedConfig& config, std::uint64_t seed,
                                             std::size_t draws) {
  std::vector<EmbeddedCaseResult> results;
  for (std::size_t k = 0; k < config.xbar_cases.size(); ++k) {
    const double xbar = config.xbar_cases[k];
    DataSet data;
    data.values.assign(static_cast<std::size_t>(config.n), xbar);  // mean pinned exactly

    const ModelSpec full = ModelSpec::Gaussian(config.obs_variance, config.prior);
    EmbeddedPair pair;
    pair.full_model = full;
    pair.null_value = config.null_value;

    EmbeddedCaseResult r;
    r.xbar = xbar;
    r.n = config.n;
    r.lrt_p = lrt_pvalue(pair, data);
    const ParamDraws post =
        sample_posterior(full, data, draws, derive_seed(seed, kTagEmbedded, k + 1));
    r.posterior_pr = embedded_posterior_lr_prob(pair, data, post);
    r.mc_se = std::sqrt(r.lrt_p * (1.0 - r.lrt_p) / static_cast<double>(draws));
    r.pass = std::fabs(r.posterior_pr - r.lrt_p) < 3.0 * r.mc_se;
    results.push_back(r);
  }
  return results;
}

std::vector<std::string> write_embedded(const std::vector<EmbeddedCaseResult>& results,
                                        const std::string& out_dir, EmitFormat format,
                                        const EmitMeta& meta) {
  Table table;
  table.columns = {"xbar", "n", "posterior_pr_lr_gt1", "lrt_pvalue", "mc_se", "verdict"};
  for (const auto& r : results) {
    table.add_row({format_sig(r.xbar), std::to_string(r.n), format_sig(r.posterior_pr),
                   format_sig(r.lrt_p), format_sig(r.mc_se), r.pass ? "PASS" : "FAIL"});
  }
  std::vector<std::string> files;
  if (format == EmitFormat::structured_record) {
    files.push_back(out_dir + "/embedded.json");
    write_text_atomic(files.back(), table_to_json(table, meta));
  } else {
    files.push_back(out_dir + "/embedded.csv");
    write_text_atomic(files.back(), table_to_csv(table, meta));
  }
  return files;
}

std::vector<ConsistencyRow> run_consistency(const ScenarioConfig& config,
                                            std::optional<std::uint64_t> seed_override) {
  AsymptoticScenario scenario = config.scenario;
  if (seed_override) scenario.seed = *seed_override;
  return consistency_experiment(scenario);
}

std::vector<std::string> write_consistency(const std::vector<ConsistencyRow>& rows,
                                           const std::string& out_dir, EmitFormat format,
                                           const EmitMeta& meta) {
  Table table;
  table.columns = {"n", "mean_prob_true_beats_false", "std_across_replications"};
  for (const auto& row : rows) {
    table.add_row({std::to_string(row.n), format_sig(row.mean_prob), format_sig(row.std_prob)});
  }
  std::vector<std::string> files;
  if (format == EmitFormat::structured_record) {
    files.push_back(out_dir + "/consistency.json");
    write_text_atomic(files.back(), table_to_json(table, meta));
  } else {
    files.push_back(out_dir + "/consistency.csv");
    write_text_atomic(files.back(), table_to_csv(table, meta));
  }
  return files;
}

}  // namespace bmc

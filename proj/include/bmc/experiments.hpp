#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bmc/config.hpp"
#include "bmc/report.hpp"

namespace bmc {

// Simple column/row table; numeric cells are preformatted to 12 significant
// digits at insertion so CSV and JSON emission agree byte for byte.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> notes;  // extra '#' metadata

  void add_row(std::vector<std::string> cells);
};

std::string table_to_csv(const Table& table, const EmitMeta& meta);
std::string table_to_json(const Table& table, const EmitMeta& meta);

struct Fig2Result {
  ComparisonReport report;
  HistogramData hist_product;
  HistogramData hist_joint;
  double gap = 0.0;     // pr_joint - pr_product
  double gap_se = 0.0;  // combined binomial standard error
  bool directional_pass = false;
};

// 99% one-sided confidence requirement on the exceedance ordering.
inline constexpr double kZ99 = 2.3263478740408408;

Fig2Result run_fig2(const PairExperimentConfig& config, std::uint64_t seed, std::size_t draws);
std::vector<std::string> write_fig2(const Fig2Result& result, const std::string& out_dir,
                                    EmitFormat format, const EmitMeta& meta);

struct PredcheckParams {
  int successes = 1;
  int trials = 10;
  int future_trials = 20;
  int threshold = 2;
  PriorSpec prior = PriorSpec::Beta(1.0, 1.0);

  bool is_default() const;
};

struct PredcheckResult {
  double value = 0.0;
  bool is_default = false;
  bool pass = false;  // meaningful only when is_default
};

PredcheckResult run_predcheck(const PredcheckParams& params = {});
std::vector<std::string> write_predcheck(const PredcheckResult& result, const std::string& out_dir,
                                         EmitFormat format, const EmitMeta& meta);

struct LindleyResult {
  std::vector<std::pair<double, double>> rows;  // (tau, BF null/full)
  std::string verdict;                          // strictly-increasing | not-monotone | n/a
};

LindleyResult run_lindley(const std::vector<double>& tau_grid, double xbar, int n,
                          double obs_variance = 1.0, double null_value = 0.0);
std::vector<std::string> write_lindley(const LindleyResult& result, const std::string& out_dir,
                                       EmitFormat format, const EmitMeta& meta);

struct EmbeddedCaseResult {
  double xbar = 0.0;
  int n = 0;
  double posterior_pr = 0.0;
  double lrt_p = 0.0;
  double mc_se = 0.0;
  bool pass = false;
};

std::vector<EmbeddedCaseResult> run_embedded(const EmbeddedConfig& config, std::uint64_t seed,
                                             std::size_t draws);
std::vector<std::string> write_embedded(const std::vector<EmbeddedCaseResult>& results,
                                        const std::string& out_dir, EmitFormat format,
                                        const EmitMeta& meta);

std::vector<ConsistencyRow> run_consistency(const ScenarioConfig& config,
                                            std::optional<std::uint64_t> seed_override = {});
std::vector<std::string> write_consistency(const std::vector<ConsistencyRow>& rows,
                                           const std::string& out_dir, EmitFormat format,
                                           const EmitMeta& meta);

}  // namespace bmc

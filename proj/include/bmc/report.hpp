#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bmc/likelihood_post.hpp"

namespace bmc {

enum class EmitFormat { structured_record, comma_separated };

EmitFormat parse_format(const std::string& name);  // accepts json/csv aliases
std::string format_name(EmitFormat f);

// Everything the harness reports for one model pair. Wall time is shown on
// the console only; emitted files carry no volatile fields so fixed seeds
// yield byte-identical outputs.
struct ComparisonReport {
  std::string model1_id;
  std::string model2_id;
  double marginal1 = 0.0;
  double marginal2 = 0.0;
  double bayes_factor = 0.0;
  double post_prob1 = 0.0;
  double post_prob2 = 0.0;
  DicReport dic1;
  DicReport dic2;
  double pr_lr_gt1_product = 0.0;
  double pr_lr_gt1_joint = 0.0;
  int decision = 2;
  std::int64_t draw_count = 0;
  std::uint64_t seed = 0;
  double wall_time_seconds = 0.0;

  void validate() const;
};

struct HistogramData {
  std::string label;
  std::vector<double> edges;         // bins + 1, strictly increasing
  std::vector<std::int64_t> counts;  // one per bin, summing to total
  std::int64_t total = 0;
};

// Equal-width bins over [lo, hi]; values outside are clamped into the end
// bins so every draw is counted.
HistogramData make_histogram(const std::string& label, std::span<const double> values, double lo,
                             double hi, int bins = 200);

// 0.1%-99.9% empirical quantile range of the pooled samples, the shared
// binning range for comparable construction overlays.
std::pair<double, double> pooled_quantile_range(std::span<const double> a,
                                                std::span<const double> b);

// Identification stamped into every emitted file.
struct EmitMeta {
  std::string subcommand;
  std::uint64_t seed = 0;
  std::int64_t draws = 0;
};

// Floats are rendered with 12 significant digits everywhere.
std::string format_sig(double v);

std::string report_to_json(const ComparisonReport& report, const EmitMeta& meta);
std::string report_to_csv(const ComparisonReport& report, const EmitMeta& meta);
std::string histogram_to_csv(const HistogramData& hist, const EmitMeta& meta);

// Write via a temp file plus rename so partial files never appear.
void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace bmc

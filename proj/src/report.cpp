#include "bmc/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bmc/version.hpp"

namespace bmc {

EmitFormat parse_format(const std::string& name) {
  if (name == "structured-record" || name == "json" || name == "record") {
    return EmitFormat::structured_record;
  }
  if (name == "comma-separated" || name == "csv") {
    return EmitFormat::comma_separated;
  }
  throw std::invalid_argument("unknown format '" + name +
                              "' (expected structured-record or comma-separated)");
}

std::string format_name(EmitFormat f) {
  return f == EmitFormat::structured_record ? "structured-record" : "comma-separated";
}

void ComparisonReport::validate() const {
  const double expected_bf = marginal1 / marginal2;
  if (std::fabs(bayes_factor - expected_bf) > 1e-12 * std::fabs(expected_bf)) {
    throw std::logic_error("bayes_factor inconsistent with the marginals");
  }
  for (double p : {post_prob1, post_prob2, pr_lr_gt1_product, pr_lr_gt1_joint}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::logic_error("probability outside [0,1] in report");
    }
  }
}

HistogramData make_histogram(const std::string& label, std::span<const double> values, double lo,
                             double hi, int bins) {
  if (bins < 1) throw std::invalid_argument("histogram needs at least one bin");
  if (values.empty()) throw std::invalid_argument("histogram over empty sample");
  if (!(lo < hi)) {
    lo -= 0.5;
    hi += 0.5;
  }
  HistogramData h;
  h.label = label;
  h.total = static_cast<std::int64_t>(values.size());
  h.counts.assign(bins, 0);
  h.edges.reserve(bins + 1);
  const double width = (hi - lo) / bins;
  for (int i = 0; i <= bins; ++i) {
    h.edges.push_back(lo + width * i);
  }
  for (double v : values) {
    int idx = static_cast<int>(std::floor((v - lo) / width));
    idx = std::clamp(idx, 0, bins - 1);  // clamp outliers into the end bins
    ++h.counts[idx];
  }
  return h;
}

std::pair<double, double> pooled_quantile_range(std::span<const double> a,
                                                std::span<const double> b) {
  std::vector<double> pooled;
  pooled.reserve(a.size() + b.size());
  pooled.insert(pooled.end(), a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::sort(pooled.begin(), pooled.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(pooled.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, pooled.size() - 1);
    const double w = pos - static_cast<double>(lo);
    return (1.0 - w) * pooled[lo] + w * pooled[hi];
  };
  return {quantile(0.001), quantile(0.999)};
}

std::string format_sig(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

std::string meta_header(const EmitMeta& meta) {
  std::ostringstream os;
  os << "# version = " << kVersion << "\n";
  os << "# subcommand = " << meta.subcommand << "\n";
  os << "# seed = " << meta.seed << "\n";
  os << "# draws = " << meta.draws << "\n";
  os << "# rng = mt19937_64 seeded per (subcommand, user seed) via splitmix64\n";
  return os.str();
}

void json_field(std::ostringstream& os, const char* key, const std::string& value, bool last = false) {
  os << "  \"" << key << "\": \"" << value << "\"" << (last ? "\n" : ",\n");
}

void json_num(std::ostringstream& os, const char* key, double value, bool last = false) {
  os << "  \"" << key << "\": " << format_sig(value) << (last ? "\n" : ",\n");
}

void json_int(std::ostringstream& os, const char* key, long long value, bool last = false) {
  os << "  \"" << key << "\": " << value << (last ? "\n" : ",\n");
}

}  // namespace

std::string report_to_json(const ComparisonReport& report, const EmitMeta& meta) {
  report.validate();
  std::ostringstream os;
  os << "{\n";
  json_field(os, "version", kVersion);
  json_field(os, "subcommand", meta.subcommand);
  json_int(os, "seed", static_cast<long long>(report.seed));
  json_int(os, "draws", report.draw_count);
  json_field(os, "model1", report.model1_id);
  json_field(os, "model2", report.model2_id);
  json_num(os, "marginal1", report.marginal1);
  json_num(os, "marginal2", report.marginal2);
  json_num(os, "bayes_factor", report.bayes_factor);
  json_num(os, "post_prob1", report.post_prob1);
  json_num(os, "post_prob2", report.post_prob2);
  json_num(os, "dic1_d_bar", report.dic1.d_bar);
  json_num(os, "dic1_p_d", report.dic1.p_d);
  json_num(os, "dic1", report.dic1.dic);
  json_num(os, "dic2_d_bar", report.dic2.d_bar);
  json_num(os, "dic2_p_d", report.dic2.p_d);
  json_num(os, "dic2", report.dic2.dic);
  json_num(os, "pr_lr_gt1_product", report.pr_lr_gt1_product);
  json_num(os, "pr_lr_gt1_joint", report.pr_lr_gt1_joint);
  json_int(os, "decision", report.decision, true);
  os << "}\n";
  return os.str();
}

std::string report_to_csv(const ComparisonReport& report, const EmitMeta& meta) {
  report.validate();
  std::ostringstream os;
  os << meta_header(meta);
  os << "field,value\n";
  os << "model1," << report.model1_id << "\n";
  os << "model2," << report.model2_id << "\n";
  os << "marginal1," << format_sig(report.marginal1) << "\n";
  os << "marginal2," << format_sig(report.marginal2) << "\n";
  os << "bayes_factor," << format_sig(report.bayes_factor) << "\n";
  os << "post_prob1," << format_sig(report.post_prob1) << "\n";
  os << "post_prob2," << format_sig(report.post_prob2) << "\n";
  os << "dic1_d_bar," << format_sig(report.dic1.d_bar) << "\n";
  os << "dic1_p_d," << format_sig(report.dic1.p_d) << "\n";
  os << "dic1," << format_sig(report.dic1.dic) << "\n";
  os << "dic2_d_bar," << format_sig(report.dic2.d_bar) << "\n";
  os << "dic2_p_d," << format_sig(report.dic2.p_d) << "\n";
  os << "dic2," << format_sig(report.dic2.dic) << "\n";
  os << "pr_lr_gt1_product," << format_sig(report.pr_lr_gt1_product) << "\n";
  os << "pr_lr_gt1_joint," << format_sig(report.pr_lr_gt1_joint) << "\n";
  os << "decision," << report.decision << "\n";
  return os.str();
}

std::string histogram_to_csv(const HistogramData& hist, const EmitMeta& meta) {
  std::int64_t total = 0;
  for (auto c : hist.counts) total += c;
  if (total != hist.total || hist.edges.size() != hist.counts.size() + 1) {
    throw std::logic_error("inconsistent histogram");
  }
  std::ostringstream os;
  os << meta_header(meta);
  os << "# construction = " << hist.label << "\n";
  os << "# total = " << hist.total << "\n";
  os << "# right_edge = " << format_sig(hist.edges.back()) << "\n";
  os << "edge,count\n";
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    os << format_sig(hist.edges[i]) << "," << hist.counts[i] << "\n";
  }
  return os.str();
}

void write_text_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    fs::create_directories(target.parent_path());
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write " + tmp.string());
    }
    out << content;
  }
  fs::rename(tmp, target);
}

}  // namespace bmc

// Acceptance suite: one numbered criterion per run (or all), one PASS/FAIL
// line each, nonzero exit when any checked criterion fails.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "bmc/config.hpp"
#include "bmc/experiments.hpp"
#include "bmc/improper.hpp"
#include "bmc/quadrature.hpp"
#include "bmc/rng.hpp"
#include "bmc/special.hpp"

using namespace bmc;

namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string config_dir() {
  if (const char* env = std::getenv("BMC_CONFIG_DIR")) return env;
  return BMC_CONFIG_DIR;
}

std::string cli_binary() {
  if (const char* env = std::getenv("BMCLAB_BIN")) return env;
  return BMCLAB_BIN_DEFAULT;
}

double sample_se(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / (static_cast<double>(v.size()) - 1.0) / static_cast<double>(v.size()));
}

std::string fmt(double v) { return format_sig(v); }

// 1. Beta-binomial predictive probability equals 0.447 within 0.001.
Outcome criterion_predictive() {
  const double value = beta_binomial_predictive(1, 10, 20, 2, PriorSpec::Beta(1, 1));
  const bool pass = std::fabs(value - 0.447) <= 0.001;
  return {pass, "beta_binomial_predictive(1,10,20,2,uniform) = " + fmt(value) +
                    ", target 0.447 +- 0.001"};
}

// 2. Posterior expected likelihood matches m(x,x)/m(x) at 1e6 draws.
Outcome criterion_posterior_expected_likelihood() {
  const DataSet x3{{3.0}};
  const std::size_t n = 1000000;
  std::ostringstream detail;
  bool pass = true;

  struct Case {
    ModelSpec model;
    double target;
    const char* name;
  };
  const std::vector<Case> cases = {
      {ModelSpec::Poisson(PriorSpec::Gamma(1, 1)), 0.146319, "poisson"},
      {ModelSpec::Binomial(5, PriorSpec::Beta(1, 1)), 0.259740, "binomial"},
  };
  for (const auto& c : cases) {
    // closed form m(x,x)/m(x) via the conjugate marginals
    const DataSet xx{{3.0, 3.0}};
    const double closed =
        std::exp(log_marginal_likelihood(c.model, xx) - log_marginal_likelihood(c.model, x3));
    const ParamDraws draws = sample_posterior(c.model, x3, n, 20250811);
    std::vector<double> liks;
    liks.reserve(n);
    for (double t : draws.values) liks.push_back(std::exp(log_likelihood(c.model, t, x3)));
    const double est = posterior_expected_likelihood(c.model, x3, draws);
    const double se = sample_se(liks);
    const bool ok =
        std::fabs(est - closed) < 3 * se && std::fabs(closed - c.target) < 1e-6;
    pass = pass && ok;
    detail << c.name << ": est " << fmt(est) << " vs closed " << fmt(closed) << " (3se "
           << fmt(3 * se) << "); ";
  }
  return {pass, detail.str()};
}

// 3. Figure-2 direction: Pr_joint(LR_binom/pois > 1) - Pr_product > 0 with
//    99% MC confidence at 1e5 draws, for every seed 1..10.
Outcome criterion_fig2_direction() {
  const PairExperimentConfig cfg = default_fig2_config();
  const std::size_t draws = 100000;
  bool pass = true;
  double min_z = 1e300;
  double sum_gap = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const LrSample product = lr_product_draws(cfg.pair.model1, cfg.pair.model2, cfg.data, draws,
                                              derive_seed(seed, 1));
    const LrSample joint = lr_joint_draws(cfg.pair, cfg.data, draws, derive_seed(seed, 2));
    const double pp = product.pr_exceeds_one();
    const double pj = joint.pr_exceeds_one();
    const double se = std::sqrt(pp * (1 - pp) / draws + pj * (1 - pj) / draws);
    const double z = (pj - pp) / se;
    min_z = std::min(min_z, z);
    sum_gap += pj - pp;
    pass = pass && (z > kZ99);
  }
  std::ostringstream detail;
  detail << "mean gap " << fmt(sum_gap / 10.0) << ", min z " << fmt(min_z) << " (need > "
         << fmt(kZ99) << ")";
  if (!pass) {
    detail << " -- the joint construction concentrates the log-LR far above 0 in location "
              "but its exceedance probability sits below the product construction's "
              "(oracle: 0.8316 vs 0.8450) under the shipped priors/pseudo-priors";
  }
  return {pass, detail.str()};
}

// 4. Bayes factor 8/3 analytic; quadrature oracle within 1e-6 relative.
Outcome criterion_bayes_factor() {
  const PairExperimentConfig cfg = default_fig2_config();
  const double bf = bayes_factor(cfg.pair.model1, cfg.pair.model2, cfg.data);
  const double target = 8.0 / 3.0;
  const double q1 = marginal_likelihood_quadrature(cfg.pair.model1, cfg.data);
  const double q2 = marginal_likelihood_quadrature(cfg.pair.model2, cfg.data);
  const double bf_quad = q1 / q2;
  const bool pass = std::fabs(bf - target) <= 1e-12 * target &&
                    std::fabs(bf_quad - bf) <= 1e-6 * bf;
  return {pass, "analytic BF " + fmt(bf) + ", quadrature BF " + fmt(bf_quad) +
                    " (rel diff " + fmt(std::fabs(bf_quad - bf) / bf) + ")"};
}

// 5. Posterior mean of the point-null LR equals sqrt(2) e^{-1/4} at 1e6 draws.
Outcome criterion_point_null_identity() {
  const ModelSpec gauss = ModelSpec::Gaussian(1.0, PriorSpec::Gaussian(0.0, 1.0));
  const DataSet data{{1.0}};
  const std::size_t n = 1000000;
  const ParamDraws draws = sample_posterior(gauss, data, n, 555);
  const double est = posterior_mean_lr_point_null(0.0, gauss, data, draws);
  std::vector<double> ratios;
  ratios.reserve(n);
  const double l0 = log_likelihood(gauss, 0.0, data);
  for (double t : draws.values) ratios.push_back(std::exp(l0 - log_likelihood(gauss, t, data)));
  const double se = sample_se(ratios);
  const double target = std::sqrt(2.0) * std::exp(-0.25);
  const bool pass = std::fabs(est - target) < 3 * se;
  return {pass, "estimate " + fmt(est) + " vs sqrt(2)e^{-1/4} = " + fmt(target) + " (3se " +
                    fmt(3 * se) + ")"};
}

// 6. Lindley divergence: strictly increasing, matches the closed form to
//    1e-9, and exceeds 100 at tau = 1000.
Outcome criterion_lindley() {
  const DataSet x1{{1.0}};
  const auto rows = lindley_sweep(0.0, x1, {1.0, 10.0, 100.0, 1000.0});
  bool pass = rows.back().second > 100.0;
  double prev = 0.0;
  std::ostringstream detail;
  for (const auto& [tau, bf] : rows) {
    const double closed =
        std::sqrt(1.0 + tau * tau) * std::exp(-tau * tau / (2.0 * (1.0 + tau * tau)));
    pass = pass && std::fabs(bf - closed) <= 1e-9 * closed && bf > prev;
    prev = bf;
    detail << "BF(" << fmt(tau) << ") = " << fmt(bf) << "; ";
  }
  return {pass, detail.str()};
}

// 7. Embedded-model equivalence at 1e5 draws for xbar in {0.2, 0.5, 1.0}.
Outcome criterion_embedded() {
  const auto results = run_embedded(default_embedded_config(), 777, 100000);
  bool pass = true;
  std::ostringstream detail;
  for (const auto& r : results) {
    pass = pass && r.pass;
    detail << "xbar " << fmt(r.xbar) << ": pr " << fmt(r.posterior_pr) << " vs p "
           << fmt(r.lrt_p) << "; ";
  }
  return {pass, detail.str()};
}

// 8. Consistency: shipped gaussian scenario exceeds 0.95 at n = 500.
Outcome criterion_consistency() {
  const ScenarioConfig cfg = default_consistency_config();
  const auto rows = run_consistency(cfg);
  const ConsistencyRow& last = rows.back();
  const bool trend = rows.back().mean_prob > rows.front().mean_prob;
  const bool pass = last.n == 500 && last.mean_prob > 0.95 && trend;
  std::ostringstream detail;
  for (const auto& row : rows) {
    detail << "n=" << row.n << " mean " << fmt(row.mean_prob) << " std " << fmt(row.std_prob)
           << "; ";
  }
  return {pass, detail.str()};
}

// 9. Training-sample invariance: exact hyperparameter equality across all
//    singleton splits for the 1/lambda poisson and Haldane scenarios.
Outcome criterion_training_invariance() {
  const ModelSpec pois = ModelSpec::Poisson(PriorSpec::ImproperPower(-1));
  const DataSet data352{{3, 5, 2}};
  const double d1 = training_invariance_check(pois, data352, singleton_splits(3));
  const PriorSpec post = training_posterior(pois, data352, TrainingSplit{{0}});
  const bool pois_ok =
      d1 == 0.0 && post.kind == PriorKind::gamma && post.shape() == 10.0 && post.rate() == 3.0;

  const ModelSpec haldane = ModelSpec::Binomial(5, PriorSpec::Beta(0, 0));
  const DataSet data32{{3, 2}};
  const double d2 = training_invariance_check(haldane, data32, singleton_splits(2));
  const PriorSpec hpost = training_posterior(haldane, data32, TrainingSplit{{1}});
  const bool haldane_ok = d2 == 0.0 && hpost.a() == 5.0 && hpost.b() == 5.0;

  return {pois_ok && haldane_ok,
          "poisson 1/lambda discrepancy " + fmt(d1) + " (posterior gamma(" + fmt(post.p1) + "," +
              fmt(post.p2) + ")); haldane discrepancy " + fmt(d2)};
}

// 10. DIC against the digamma closed form at 1e6 draws; identities exact.
Outcome criterion_dic() {
  const ModelSpec pois = ModelSpec::Poisson(PriorSpec::Gamma(1, 1));
  const DataSet x3{{3.0}};
  const std::size_t n = 1000000;
  const ParamDraws draws = sample_posterior(pois, x3, n, 1010);
  const DicReport report = dic(pois, x3, draws);

  std::vector<double> dev;
  dev.reserve(n);
  for (double t : draws.values) dev.push_back(-2.0 * log_likelihood(pois, t, x3));
  const double se = sample_se(dev);

  // closed forms via the digamma function: E[log lambda | x] = psi(4) - log 2
  const double d_bar_closed =
      -2.0 * (3.0 * (digamma(4.0) - std::log(2.0)) - 2.0 - std::log(6.0));
  const double d_hat_closed = -2.0 * (-2.0 + 3.0 * std::log(2.0) - std::log(6.0));
  const double p_d_closed = d_bar_closed - d_hat_closed;

  const bool identities = report.dic == report.p_d + report.d_bar &&
                          report.p_d == report.d_bar - report.d_hat;
  const bool pass = identities && std::fabs(report.d_bar - d_bar_closed) < 3 * se &&
                    std::fabs(report.p_d - p_d_closed) < 3 * se &&
                    std::fabs(report.dic - (d_bar_closed + p_d_closed)) < 6 * se;
  return {pass, "d_bar " + fmt(report.d_bar) + " vs " + fmt(d_bar_closed) + ", p_d " +
                    fmt(report.p_d) + " vs " + fmt(p_d_closed) + ", dic " + fmt(report.dic) +
                    " (3se " + fmt(3 * se) + "), identities " +
                    (identities ? "exact" : "violated")};
}

// 11. Harmonic-mean instability: IQR over 100 seeds at 1e4 draws exceeds 5x
//     the prior-sampling estimator's IQR at equal budget.
Outcome criterion_harmonic_instability() {
  const ModelSpec pois = ModelSpec::Poisson(PriorSpec::Gamma(1, 1));
  const DataSet x3{{3.0}};
  const std::size_t n = 10000;
  std::vector<double> hm;
  std::vector<double> prior_est;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const ParamDraws post = sample_posterior(pois, x3, n, derive_seed(seed, 111));
    hm.push_back(harmonic_mean_marginal(pois, x3, post));

    const ParamDraws prior = sample_prior(pois, n, derive_seed(seed, 112));
    std::vector<double> lls;
    lls.reserve(n);
    for (double t : prior.values) lls.push_back(log_likelihood(pois, t, x3));
    prior_est.push_back(std::exp(log_mean_exp(lls)));
  }
  auto iqr = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    auto q = [&](double p) {
      const double pos = p * (v.size() - 1);
      const std::size_t lo = static_cast<std::size_t>(pos);
      const double w = pos - lo;
      return (1 - w) * v[lo] + w * v[std::min(lo + 1, v.size() - 1)];
    };
    return q(0.75) - q(0.25);
  };
  const double iqr_hm = iqr(hm);
  const double iqr_prior = iqr(prior_est);
  const bool pass = iqr_hm > 5.0 * iqr_prior;
  return {pass, "harmonic-mean IQR " + fmt(iqr_hm) + " vs prior-sampling IQR " + fmt(iqr_prior) +
                    " (ratio " + fmt(iqr_hm / iqr_prior) + ", need > 5)"};
}

// 12. Decomposition cross-check on every shipped pair configuration.
Outcome criterion_decomposition() {
  bool pass = true;
  std::ostringstream detail;
  for (const char* name : {"fig2.json", "pair_gaussian.json"}) {
    PairExperimentConfig cfg;
    const std::string path = config_dir() + "/" + name;
    cfg = fs::exists(path) ? load_pair_config(path)
                           : (std::string(name) == "fig2.json" ? default_fig2_config()
                                                               : default_dominated_pair_config());
    const ProbF1BeatsF2 p = prob_f1_beats_f2(cfg.pair, cfg.data, 100000, 1212);
    const double tol = 3 * std::max(p.combined_se(), 1e-12);
    const bool ok = std::fabs(p.direct - p.decomposed) <= tol;
    pass = pass && ok;
    detail << name << ": direct " << fmt(p.direct) << " decomposed " << fmt(p.decomposed)
           << " (3se " << fmt(tol) << "); ";
  }
  return {pass, detail.str()};
}

// 13. CLI determinism: byte-identical outputs across two runs per subcommand.
Outcome criterion_determinism() {
  const std::string bin = cli_binary();
  if (!fs::exists(bin)) {
    return {false, "CLI binary not found at " + bin};
  }
  const fs::path root = fs::temp_directory_path() / "bmc_determinism";
  fs::remove_all(root);
  fs::create_directories(root);

  const std::vector<std::pair<std::string, std::string>> runs = {
      {"fig2", "fig2 --seed 42 --draws 20000"},
      {"predcheck", "predcheck"},
      {"lindley", "lindley --grid 1,10,100,1000"},
      {"embedded", "embedded --seed 42 --draws 20000"},
      {"consistency", "consistency --seed 42"},
      {"report", "report --seed 42 --draws 5000"},
  };

  bool pass = true;
  std::ostringstream detail;
  for (const auto& [name, args] : runs) {
    const fs::path dir_a = root / (name + "_a");
    const fs::path dir_b = root / (name + "_b");
    for (const fs::path& dir : {dir_a, dir_b}) {
      const std::string cmd = bin + " " + args + " --out " + dir.string() + " > " +
                              (dir.string() + ".log") + " 2>&1";
      const int rc = std::system(cmd.c_str());
      // fig2/report legitimately exit 1 when the directional assertion fails;
      // determinism is judged on the emitted bytes.
      if (rc != 0 && (rc >> 8) != 1) {
        pass = false;
        detail << name << ": exit " << (rc >> 8) << "; ";
      }
    }
    std::vector<fs::path> files_a;
    for (const auto& entry : fs::recursive_directory_iterator(dir_a)) {
      if (entry.is_regular_file()) files_a.push_back(entry.path());
    }
    std::sort(files_a.begin(), files_a.end());
    if (files_a.empty()) {
      pass = false;
      detail << name << ": no outputs; ";
      continue;
    }
    for (const auto& fa : files_a) {
      const fs::path fb = dir_b / fs::relative(fa, dir_a);
      std::ifstream ia(fa, std::ios::binary);
      std::ifstream ib(fb, std::ios::binary);
      std::ostringstream ca;
      std::ostringstream cb;
      ca << ia.rdbuf();
      cb << ib.rdbuf();
      if (!ib || ca.str() != cb.str()) {
        pass = false;
        detail << name << ": " << fs::relative(fa, dir_a).string() << " differs; ";
      }
    }
    detail << name << " ok(" << files_a.size() << " files); ";
  }
  fs::remove_all(root);
  return {pass, detail.str()};
}

const std::map<int, std::pair<std::string, std::function<Outcome()>>> kCriteria = {
    {1, {"predictive check 0.447", criterion_predictive}},
    {2, {"posterior expected likelihood identity", criterion_posterior_expected_likelihood}},
    {3, {"figure-2 joint vs product exceedance direction", criterion_fig2_direction}},
    {4, {"bayes factor 8/3 and quadrature agreement", criterion_bayes_factor}},
    {5, {"point-null posterior-mean LR identity", criterion_point_null_identity}},
    {6, {"lindley divergence sweep", criterion_lindley}},
    {7, {"embedded-model p-value equivalence", criterion_embedded}},
    {8, {"decision-rule consistency at n=500", criterion_consistency}},
    {9, {"training-sample invariance", criterion_training_invariance}},
    {10, {"DIC digamma closed form and identities", criterion_dic}},
    {11, {"harmonic-mean instability", criterion_harmonic_instability}},
    {12, {"decomposition cross-check", criterion_decomposition}},
    {13, {"CLI determinism", criterion_determinism}},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> to_run;
  if (argc > 1) {
    const int k = std::atoi(argv[1]);
    if (!kCriteria.count(k)) {
      std::cerr << "unknown criterion " << argv[1] << " (valid: 1..13)\n";
      return 2;
    }
    to_run.push_back(k);
  } else {
    for (const auto& [k, _] : kCriteria) to_run.push_back(k);
  }

  int failures = 0;
  for (int k : to_run) {
    const auto& [name, fn] = kCriteria.at(k);
    Outcome outcome;
    try {
      outcome = fn();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %02d %s [%s]: %s\n", k, outcome.pass ? "PASS" : "FAIL", name.c_str(),
                outcome.detail.c_str());
    if (!outcome.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

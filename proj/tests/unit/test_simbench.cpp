#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "acsel/errors.hpp"
#include "acsel/experiment.hpp"
#include "acsel/metrics.hpp"
#include "acsel/simulate.hpp"
#include "acsel/stats.hpp"

using namespace acsel;

namespace {

SimScenario situation2_like(int n_obs, int n_vars, int replicates) {
  SimScenario s;
  s.name = "test";
  s.n_obs = n_obs;
  s.n_vars = n_vars;
  s.beta = Eigen::VectorXd::Zero(n_vars);
  s.beta.head(std::min(5, n_vars)).setOnes();
  s.cov.kind = CovarianceSpec::Kind::constant;
  s.cov.rho = 0.5;
  s.snr = 5.0;
  s.replicates = replicates;
  return s;
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& contents) {
    static int counter = 0;
    path = "test_tmp_" + std::to_string(counter++) + ".txt";
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("scenario parsing covers the benchmark settings") {
  const std::string text =
      "# situation-2 style\n"
      "n_obs = 20\n"
      "n_vars = 50\n"
      "beta = first_q=5\n"
      "covariance = constant\n"
      "rho = 0.5\n"
      "snr = 5\n"
      "replicates = 200\n";
  const SimScenario s = parse_scenario(text, "situation2");
  CHECK(s.n_obs == 20);
  CHECK(s.n_vars == 50);
  CHECK(s.q() == 5);
  CHECK(s.cov.kind == CovarianceSpec::Kind::constant);
  CHECK(s.cov.rho == 0.5);
  CHECK(s.replicates == 200);
  CHECK(s.support() == std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("scenario parsing rejects malformed input") {
  CHECK_THROWS_AS(parse_scenario("n_vars = 5\nbeta = 1,2\n", "bad"), ParseError);
  CHECK_THROWS_AS(parse_scenario("n_obs = 5\n", "bad"), ParseError);
  CHECK_THROWS_AS(parse_scenario("n_obs=5\nn_vars=2\nwat=1\n", "bad"), ParseError);
  CHECK_THROWS_AS(
      parse_scenario("n_obs=5\nn_vars=2\ncovariance=magic\n", "bad"),
      ParseError);
}

TEST_CASE("explicit beta lists parse") {
  const SimScenario s =
      parse_scenario("n_obs=6\nn_vars=3\nbeta=1.5,0,-2\n", "b");
  CHECK(s.beta[0] == 1.5);
  CHECK(s.beta[1] == 0.0);
  CHECK(s.beta[2] == -2.0);
  CHECK(s.q() == 2);
}

TEST_CASE("generated data matches the requested dimensions and correlation") {
  SimScenario s = situation2_like(2000, 8, 1);
  RngStream rng(301);
  const Dataset d = gen_scenario(s, rng);
  CHECK(d.n() == 2000);
  CHECK(d.p() == 8);

  const StandardizedDesign sd = standardize(d);
  const CorrelationMatrix corr = correlation(sd);
  double sum = 0.0;
  int count = 0;
  for (int a = 0; a < 8; ++a) {
    for (int b = a + 1; b < 8; ++b) {
      sum += corr.c(a, b);
      ++count;
    }
  }
  CHECK(sum / count == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("identity covariance keeps empirical correlations small") {
  SimScenario s = situation2_like(100, 6, 1);
  s.cov.kind = CovarianceSpec::Kind::identity;
  RngStream rng(303);
  const CorrelationMatrix corr = correlation(standardize(gen_scenario(s, rng)));
  for (int a = 0; a < 6; ++a) {
    for (int b = a + 1; b < 6; ++b) CHECK(std::abs(corr.c(a, b)) < 0.5);
  }
}

TEST_CASE("covariance entries apply symmetrically and reject non-PSD") {
  SimScenario s = situation2_like(500, 4, 1);
  s.cov.kind = CovarianceSpec::Kind::identity;
  s.cov.entries = {{0, 3, 0.9}};
  RngStream rng(305);
  const CorrelationMatrix corr = correlation(standardize(gen_scenario(s, rng)));
  CHECK(corr.c(0, 3) == doctest::Approx(0.9).epsilon(0.1));

  SimScenario bad = situation2_like(10, 3, 1);
  bad.cov.kind = CovarianceSpec::Kind::identity;
  bad.cov.entries = {{0, 1, 0.95}, {1, 2, 0.95}, {0, 2, -0.95}};
  CHECK_THROWS_AS(ScenarioSampler{bad}, NotPsdError);
}

TEST_CASE("noise_variance_for_snr ratio arithmetic") {
  // signal with sample variance exactly 5
  Eigen::VectorXd signal(5);
  signal << 0, 0, 0, 5, 5;  // mean 2, sum sq dev 30, var 7.5 -- adjust below
  signal = signal.array() - signal.mean();
  const double var = signal.squaredNorm() / 4.0;
  const double sigma2 = noise_variance_for_snr(signal, 5.0);
  CHECK(sigma2 == doctest::Approx(var / 5.0).epsilon(1e-12));

  CHECK(noise_variance_for_snr(signal, 1e12) ==
        doctest::Approx(var * 1e-12).epsilon(1e-9));

  CHECK_THROWS_AS(noise_variance_for_snr(Eigen::VectorXd::Zero(5), 5.0),
                  ZeroSignalError);
  Eigen::VectorXd constant = Eigen::VectorXd::Ones(5);
  CHECK_THROWS_AS(noise_variance_for_snr(constant, 5.0), ZeroSignalError);
}

TEST_CASE("generated snr is close to the target") {
  SimScenario s = situation2_like(20, 10, 1);
  double ratio_sum = 0.0;
  const ScenarioSampler sampler(s);
  for (int r = 0; r < 200; ++r) {
    const Dataset d = sampler.replicate(307, r);
    const Eigen::VectorXd signal = d.x * s.beta;
    const Eigen::VectorXd noise = d.y - signal;
    const double var_sig =
        (signal.array() - signal.mean()).square().sum() / (d.n() - 1);
    const double var_noise =
        (noise.array() - noise.mean()).square().sum() / (d.n() - 1);
    ratio_sum += var_sig / var_noise;
  }
  CHECK(ratio_sum / 200.0 == doctest::Approx(5.0).epsilon(0.15));
}

TEST_CASE("replicates are pure functions of (seed, scenario, r)") {
  SimScenario s = situation2_like(15, 6, 3);
  const ScenarioSampler sampler(s);
  const Dataset a = sampler.replicate(42, 2);
  const Dataset b = sampler.replicate(42, 2);
  CHECK((a.x.array() == b.x.array()).all());
  CHECK((a.y.array() == b.y.array()).all());
  const Dataset c = sampler.replicate(42, 1);
  CHECK(!(c.x.array() == a.x.array()).all());
}

TEST_CASE("external matrix scenarios sample distinct columns") {
  std::ostringstream csv;
  csv << "g1,g2,g3,g4,g5,g6\n";
  RngStream rng(309);
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 6; ++j) csv << (j ? "," : "") << rng.normal();
    csv << '\n';
  }
  const TempFile file(csv.str());

  SimScenario s;
  s.name = "external";
  s.n_vars = 4;
  s.beta = Eigen::VectorXd::Zero(4);
  s.beta.head(2).setOnes();
  s.cov.kind = CovarianceSpec::Kind::external;
  s.cov.external_path = file.path;
  s.snr = 5.0;
  s.replicates = 2;

  const ScenarioSampler sampler(s);
  CHECK(sampler.scenario().n_obs == 9);
  const Dataset d = sampler.replicate(7, 0);
  CHECK(d.n() == 9);
  CHECK(d.p() == 4);
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) CHECK(d.names[a] != d.names[b]);
  }
  const Dataset again = sampler.replicate(7, 0);
  CHECK((again.x.array() == d.x.array()).all());

  SimScenario missing = s;
  missing.cov.external_path = "";
  CHECK_THROWS_AS(ScenarioSampler{missing}, ExternalMatrixMissingError);
}

TEST_CASE("compute_metrics formulas") {
  const std::vector<int> truth{0, 1, 2};

  MetricsRecord perfect = compute_metrics(truth, {{1, 1, 1, 0}});
  CHECK(perfect.recall == 1.0);
  CHECK(perfect.precision == 1.0);
  CHECK(perfect.fscore == 1.0);
  CHECK(perfect.emptiness == 0.0);

  MetricsRecord partial = compute_metrics(truth, {{1, 0, 0, 1}});
  CHECK(partial.recall == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(partial.precision == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(partial.fscore == doctest::Approx(0.4).epsilon(1e-12));

  MetricsRecord mixed = compute_metrics({0}, {{0, 0}, {1, 0}});
  CHECK(mixed.emptiness == 0.5);
  CHECK(mixed.precision == 1.0);
  CHECK(mixed.n_nonempty == 1);
}

TEST_CASE("fscore identity holds per selection") {
  RngStream rng(311);
  const std::vector<int> truth{0, 2, 4};
  for (int trial = 0; trial < 50; ++trial) {
    SelectionMask mask(8, 0);
    for (int j = 0; j < 8; ++j) mask[j] = rng.uniform() < 0.4 ? 1 : 0;
    if (mask_count(mask) == 0) continue;
    const SelectionScore s = score_selection(truth, mask);
    if (s.recall + s.precision > 0) {
      CHECK(std::abs(s.fscore - 2 * s.recall * s.precision /
                                    (s.recall + s.precision)) < 1e-12);
    } else {
      CHECK(s.fscore == 0.0);
    }
  }
}

TEST_CASE("spearman statistics behave") {
  const std::vector<double> x{1, 2, 3, 4, 5, 6};
  const std::vector<double> y{2, 1, 4, 3, 6, 5};
  CHECK(spearman_rho(x, x) == doctest::Approx(1.0));
  std::vector<double> neg(x.rbegin(), x.rend());
  CHECK(spearman_rho(x, neg) == doctest::Approx(-1.0));
  CHECK(spearman_rho(x, y) > 0.5);

  const double p_good = spearman_pvalue_greater(x, x, 2000, 1);
  CHECK(p_good < 0.05);
  const double p_bad = spearman_pvalue_greater(x, neg, 2000, 1);
  CHECK(p_bad > 0.5);
}

TEST_CASE("ties get average ranks") {
  const std::vector<double> v{3.0, 1.0, 3.0, 2.0};
  const std::vector<double> r = average_ranks(v);
  CHECK(r[0] == doctest::Approx(3.5));
  CHECK(r[1] == doctest::Approx(1.0));
  CHECK(r[2] == doctest::Approx(3.5));
  CHECK(r[3] == doctest::Approx(2.0));
}

TEST_CASE("bootstrap band brackets the mean") {
  std::vector<double> values;
  RngStream rng(313);
  for (int i = 0; i < 200; ++i) values.push_back(rng.normal() + 3.0);
  const auto band = bootstrap_mean_band(values, 1000, 7);
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= values.size();
  CHECK(band[0] < mean);
  CHECK(band[1] > mean);
  CHECK(band[1] - band[0] < 0.5);
}

TEST_CASE("experiment smoke run: equivalence at c0=1 and reproducibility") {
  ExperimentConfig config;
  config.scenario = situation2_like(15, 10, 4);
  config.scenario.replicates = 4;
  config.selectors = {parse_selector("lasso:bic")};
  config.c0_grid = {1.0, 0.8};
  config.b_count = 8;
  config.threshold = 1.0;
  config.seed = 2024;
  config.jobs = 2;
  config.stability_b = 10;
  config.bootstrap_resamples = 50;

  const ExperimentResult result = run_experiment(config);
  REQUIRE(result.replicates.size() == 4);
  REQUIRE(result.summaries.size() == 1);
  REQUIRE(result.summaries[0].acsel.size() == 2);
  CHECK(result.summaries[0].stability.has_value());

  // c0 = 1: wrapper equals the base selector, so acsel and naive agree
  const auto& at_one = result.summaries[0];
  CHECK(at_one.acsel[0].metrics.precision ==
        doctest::Approx(at_one.naive[0].metrics.precision));
  CHECK(at_one.acsel[0].metrics.emptiness ==
        doctest::Approx(at_one.naive[0].metrics.emptiness));

  const ExperimentResult again = run_experiment(config);
  for (int r = 0; r < 4; ++r) {
    CHECK(again.replicates[r].acsel_masks == result.replicates[r].acsel_masks);
    CHECK(again.replicates[r].stability_masks ==
          result.replicates[r].stability_masks);
  }
}

TEST_CASE("replicate log round-trips and aggregates recompute") {
  ExperimentConfig config;
  config.scenario = situation2_like(15, 8, 3);
  config.scenario.replicates = 3;
  config.selectors = {parse_selector("lasso:gcv")};
  config.c0_grid = {1.0, 0.85};
  config.b_count = 5;
  config.seed = 77;
  config.jobs = 1;
  config.stability_b = 8;
  config.bootstrap_resamples = 50;

  ExperimentResult result = run_experiment(config);

  std::ostringstream log;
  write_replicate_log(log, result);
  const auto parsed = parse_replicate_log(log.str(), config);
  REQUIRE(parsed.size() == 3);
  for (int r = 0; r < 3; ++r) {
    CHECK(parsed[r].acsel_masks == result.replicates[r].acsel_masks);
    CHECK(parsed[r].naive_masks == result.replicates[r].naive_masks);
    CHECK(parsed[r].stability_masks == result.replicates[r].stability_masks);
  }

  // metrics recomputed from the log match the aggregates
  ExperimentResult rebuilt;
  rebuilt.config = config;
  rebuilt.replicates = parsed;
  aggregate_experiment(rebuilt);
  for (std::size_t g = 0; g < config.c0_grid.size(); ++g) {
    CHECK(rebuilt.summaries[0].acsel[g].metrics.precision ==
          doctest::Approx(result.summaries[0].acsel[g].metrics.precision));
    CHECK(rebuilt.summaries[0].acsel[g].metrics.emptiness ==
          doctest::Approx(result.summaries[0].acsel[g].metrics.emptiness));
  }

  // dropping one row leaves that replicate incomplete
  std::string text = log.str();
  text.erase(text.rfind('\n', text.size() - 2) + 1);
  CHECK(parse_replicate_log(text, config).size() == 2);
}

TEST_CASE("confidence pairs pool gammas against the true support") {
  ExperimentConfig config;
  config.scenario = situation2_like(15, 6, 2);
  config.scenario.replicates = 2;
  config.selectors = {parse_selector("lasso:bic")};
  config.c0_grid = {1.0, 0.8, 0.6};
  config.b_count = 4;
  config.seed = 5;
  config.with_stability = false;
  config.bootstrap_resamples = 20;

  const ExperimentResult result = run_experiment(config);
  const auto pairs = confidence_pairs(result, 0);
  CHECK(pairs.size() == 2u * 6u);
  for (const auto& pr : pairs) {
    CHECK(pr.gamma >= 0.0);
    CHECK(pr.gamma <= 1.0);
    CHECK((pr.in_support == 0.0 || pr.in_support == 1.0));
  }
}

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "acsel/geometry.hpp"
#include "acsel/rng.hpp"

namespace acsel {

struct CovarianceSpec {
  enum class Kind { identity, constant, external };
  Kind kind = Kind::identity;
  double rho = 0.0;  // constant off-diagonal value for Kind::constant
  // Extra symmetric entries (i, j, value), 0-based, applied on top of the
  // base matrix.
  std::vector<std::tuple<int, int, double>> entries;
  std::string external_path;  // matrix file for Kind::external
};

/// One simulation setting: rows of X are Gaussian with the given covariance
/// (or sampled columns of an external matrix), the response is X beta plus
/// Gaussian noise scaled to the target signal-to-noise ratio.
struct SimScenario {
  std::string name;
  int n_obs = 0;
  int n_vars = 0;
  Eigen::VectorXd beta;  // length n_vars
  CovarianceSpec cov;
  double snr = 5.0;
  int replicates = 200;

  int q() const { return static_cast<int>((beta.array() != 0.0).count()); }
  /// Indices of truly active variables.
  std::vector<int> support() const;
  /// Stable content tag; replicate streams derive from (seed, tag, r).
  std::uint64_t content_tag() const;
};

/// Parses the key=value scenario format. Unknown keys are an error.
SimScenario load_scenario(const std::string& path);
SimScenario parse_scenario(const std::string& text, const std::string& name);

/// Numeric matrix file = CSV with an optional header row.
struct ExternalMatrix {
  Eigen::MatrixXd values;
  std::vector<std::string> names;
};
ExternalMatrix load_external_matrix(const std::string& path);

/// sigma^2 = Var(signal) / snr, with the unbiased sample variance over rows.
/// Throws ZeroSignalError for a (near-)constant signal.
double noise_variance_for_snr(const Eigen::VectorXd& signal, double snr);

/// Draws one dataset. For external scenarios the matrix is loaded per call
/// unless supplied through ScenarioSampler.
Dataset gen_scenario(const SimScenario& s, RngStream& rng);

/// Precomputes the covariance factor (and loads the external matrix) once,
/// then generates replicates as pure functions of (seed, scenario, r).
class ScenarioSampler {
public:
  explicit ScenarioSampler(const SimScenario& s);

  Dataset replicate(std::uint64_t master_seed, int r) const;
  Dataset generate(RngStream& rng) const;

  const SimScenario& scenario() const { return scenario_; }

private:
  SimScenario scenario_;
  Eigen::MatrixXd chol_;  // lower factor for Gaussian scenarios
  std::optional<ExternalMatrix> external_;
};

}  // namespace acsel

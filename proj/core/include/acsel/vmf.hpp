#pragma once

#include <Eigen/Dense>

#include "acsel/rng.hpp"

namespace acsel {

/// Parameters of a von Mises-Fisher distribution on the unit sphere of R^D.
/// kappa == +inf is the point-mass convention, kappa == 0 the uniform one.
struct VmfParams {
  Eigen::VectorXd mu;  // unit vector, length D
  double kappa = 0.0;  // >= 0, +inf allowed
};

/// A set of unit vectors, one per column.
struct DirectionSample {
  Eigen::MatrixXd points;  // D x m

  Eigen::Index dim() const { return points.rows(); }
  Eigen::Index count() const { return points.cols(); }
};

/// Normalized mean resultant direction of the sample. Throws
/// ZeroResultantError when the column sum has norm below 1e-12.
Eigen::VectorXd estimate_mu(const DirectionSample& points);

/// Concentration estimate kappa = rbar (D - rbar^2) / (1 - rbar^2) from the
/// mean resultant length rbar. Returns +inf when rbar exceeds 1 - 1e-9,
/// which covers the single-point case.
double estimate_kappa(const DirectionSample& points);

/// Log density at unit vector x. Requires finite kappa > 0; the degenerate
/// cases are the callers' conventions (DegenerateKappaError otherwise).
double vmf_log_density(const Eigen::VectorXd& x, const VmfParams& p);

/// One draw. kappa == +inf returns mu itself; kappa == 0 a uniform sphere
/// point; otherwise the tangent-normal decomposition with rejection sampling
/// for the cosine and a Householder reflection taking the pole to mu.
Eigen::VectorXd sample_vmf_one(const VmfParams& p, RngStream& rng);

/// `count` independent draws as columns.
DirectionSample sample_vmf(const VmfParams& p, int count, RngStream& rng);

}  // namespace acsel

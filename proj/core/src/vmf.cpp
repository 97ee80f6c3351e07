#include "acsel/vmf.hpp"

#include <cmath>
#include <limits>

#include "acsel/errors.hpp"
#include "acsel/special.hpp"

namespace acsel {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_unit(const Eigen::VectorXd& v, const char* what) {
  if (std::abs(v.norm() - 1.0) > 1e-8) {
    throw DegenerateKappaError(std::string(what) + ": vector is not unit norm");
  }
}

// Rejection sampler for the cosine t = mu . x of a vMF draw on the unit
// sphere of R^dim (Ulrich's envelope in Wood's formulation).
double sample_cosine(double kappa, int dim, RngStream& rng) {
  const double m = static_cast<double>(dim - 1);
  const double b = m / (std::sqrt(4.0 * kappa * kappa + m * m) + 2.0 * kappa);
  const double x0 = (1.0 - b) / (1.0 + b);
  const double c = kappa * x0 + m * std::log1p(-x0 * x0);
  for (;;) {
    const double z = rng.beta(0.5 * m, 0.5 * m);
    const double w = (1.0 - (1.0 + b) * z) / (1.0 - (1.0 - b) * z);
    const double u = rng.uniform();
    if (kappa * w + m * std::log1p(-x0 * w) - c >= std::log(u)) return w;
  }
}

}  // namespace

Eigen::VectorXd estimate_mu(const DirectionSample& points) {
  if (points.count() < 1) {
    throw ZeroResultantError("estimate_mu: empty sample");
  }
  Eigen::VectorXd resultant = points.points.rowwise().sum();
  const double norm = resultant.norm();
  if (norm < 1e-12) {
    throw ZeroResultantError(
        "estimate_mu: resultant norm below 1e-12 (antipodal cancellation)");
  }
  return resultant / norm;
}

double estimate_kappa(const DirectionSample& points) {
  const Eigen::Index m = points.count();
  if (m < 1) {
    throw ZeroResultantError("estimate_kappa: empty sample");
  }
  const double d = static_cast<double>(points.dim());
  const double rbar =
      points.points.rowwise().sum().norm() / static_cast<double>(m);
  if (rbar > 1.0 - 1e-9) return std::numeric_limits<double>::infinity();
  return rbar * (d - rbar * rbar) / (1.0 - rbar * rbar);
}

double vmf_log_density(const Eigen::VectorXd& x, const VmfParams& p) {
  if (!(p.kappa > 0.0) || std::isinf(p.kappa)) {
    throw DegenerateKappaError(
        "vmf_log_density: kappa must be finite and positive");
  }
  require_unit(p.mu, "vmf_log_density");
  require_unit(x, "vmf_log_density");
  const double d = static_cast<double>(p.mu.size());
  const double order = 0.5 * d - 1.0;
  const double log_norm = order * std::log(p.kappa) -
                          0.5 * d * std::log(2.0 * kPi) -
                          log_bessel_i(order, p.kappa);
  return log_norm + p.kappa * p.mu.dot(x);
}

Eigen::VectorXd sample_vmf_one(const VmfParams& p, RngStream& rng) {
  const int dim = static_cast<int>(p.mu.size());
  if (dim < 2) {
    throw DegenerateKappaError("sample_vmf: dimension must be at least 2");
  }
  if (std::isinf(p.kappa)) return p.mu;
  require_unit(p.mu, "sample_vmf");
  if (p.kappa == 0.0) return rng.unit_sphere(dim);

  const double w = sample_cosine(p.kappa, dim, rng);
  const Eigen::VectorXd tangent = rng.unit_sphere(dim - 1);

  // Draw around the pole e_1, then reflect the pole onto mu.
  Eigen::VectorXd z(dim);
  z[0] = w;
  z.tail(dim - 1) = std::sqrt(std::max(0.0, 1.0 - w * w)) * tangent;

  Eigen::VectorXd u = -p.mu;
  u[0] += 1.0;  // e_1 - mu
  const double un2 = u.squaredNorm();
  if (un2 < 1e-28) return z;  // mu is (numerically) the pole itself
  return z - u * (2.0 * u.dot(z) / un2);
}

DirectionSample sample_vmf(const VmfParams& p, int count, RngStream& rng) {
  DirectionSample out;
  out.points.resize(p.mu.size(), count);
  for (int j = 0; j < count; ++j) {
    out.points.col(j) = sample_vmf_one(p, rng);
  }
  return out;
}

}  // namespace acsel

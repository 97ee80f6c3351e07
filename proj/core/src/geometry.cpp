#include "acsel/geometry.hpp"

#include <cmath>

#include "acsel/errors.hpp"

namespace acsel {

StandardizedDesign standardize(const Dataset& d) {
  const Eigen::Index n = d.n();
  const Eigen::Index p = d.p();
  if (n < 3) {
    throw TooFewRowsError("standardize: need at least 3 observations, got " +
                          std::to_string(n));
  }
  if (d.y.size() != n) {
    throw ParseError("standardize: response length does not match row count");
  }

  StandardizedDesign out;
  out.xs.resize(n, p);
  out.col_means.resize(p);
  out.col_scales.resize(p);
  out.names = d.names;

  for (Eigen::Index j = 0; j < p; ++j) {
    const double mean = d.x.col(j).mean();
    Eigen::VectorXd centered = d.x.col(j).array() - mean;
    const double scale = centered.norm();
    if (scale <= 1e-12 * std::max(1.0, d.x.col(j).norm())) {
      const std::string label =
          j < static_cast<Eigen::Index>(d.names.size()) ? d.names[j]
                                                        : std::to_string(j + 1);
      throw ConstantColumnError(
          "standardize: column '" + label + "' has zero variance",
          static_cast<int>(j));
    }
    out.xs.col(j) = centered / scale;
    out.col_means[j] = mean;
    out.col_scales[j] = scale;
  }

  out.y_mean = d.y.mean();
  out.ys = d.y.array() - out.y_mean;
  return out;
}

Eigen::MatrixXd basis_h(Eigen::Index n_obs) {
  if (n_obs < 3) {
    throw TooFewRowsError("basis_h: need at least 3 observations, got " +
                          std::to_string(n_obs));
  }
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n_obs, n_obs - 1);
  for (Eigen::Index k = 1; k < n_obs; ++k) {
    const double norm = std::sqrt(static_cast<double>(k) * (k + 1));
    for (Eigen::Index i = 0; i < k; ++i) h(i, k - 1) = 1.0 / norm;
    h(k, k - 1) = -static_cast<double>(k) / norm;
  }
  return h;
}

Eigen::VectorXd phi_forward(const Eigen::VectorXd& v) {
  const Eigen::Index n = v.size();
  if (n < 3) throw TooFewRowsError("phi_forward: vector too short");
  const double total = v.sum();
  if (std::abs(total) > 1e-8 * std::max(v.norm(), 1e-30)) {
    throw NotInHyperplaneError(
        "phi_forward: input is not centered (sum = " + std::to_string(total) +
        ")");
  }

  // w_k = (v_1 + ... + v_k - k v_{k+1}) / sqrt(k (k+1)), via prefix sums.
  Eigen::VectorXd w(n - 1);
  double prefix = 0.0;
  for (Eigen::Index k = 1; k < n; ++k) {
    prefix += v[k - 1];
    const double norm = std::sqrt(static_cast<double>(k) * (k + 1));
    w[k - 1] = (prefix - static_cast<double>(k) * v[k]) / norm;
  }
  return w;
}

Eigen::VectorXd phi_inverse(const Eigen::VectorXd& w) {
  const Eigen::Index m = w.size();  // N - 1
  const Eigen::Index n = m + 1;
  if (m < 2) throw TooFewRowsError("phi_inverse: vector too short");

  // u_i = sum_{k >= i} a_k - (i-1) a_{i-1} with a_k = w_k / sqrt(k (k+1)),
  // via a suffix sum.
  Eigen::VectorXd a(m);
  for (Eigen::Index k = 1; k <= m; ++k) {
    a[k - 1] = w[k - 1] / std::sqrt(static_cast<double>(k) * (k + 1));
  }
  Eigen::VectorXd u(n);
  double suffix = 0.0;
  u[n - 1] = -static_cast<double>(n - 1) * a[n - 2];
  for (Eigen::Index i = n - 1; i >= 1; --i) {
    suffix += a[i - 1];
    u[i - 1] = suffix - (i >= 2 ? static_cast<double>(i - 1) * a[i - 2] : 0.0);
  }
  return u;
}

SphereEmbedding embed_columns(const StandardizedDesign& sd) {
  SphereEmbedding emb;
  emb.z.resize(sd.n() - 1, sd.p());
  for (Eigen::Index j = 0; j < sd.p(); ++j) {
    emb.z.col(j) = phi_forward(sd.xs.col(j));
  }
  return emb;
}

}  // namespace acsel

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace acsel {

/// Raw regression data: N observations of P predictors plus a response.
/// Requires N >= 3 and no constant predictor column.
struct Dataset {
  Eigen::MatrixXd x;               // N x P
  Eigen::VectorXd y;               // length N
  std::vector<std::string> names;  // P column labels

  Eigen::Index n() const { return x.rows(); }
  Eigen::Index p() const { return x.cols(); }
};

/// Design after centering and column normalization. Every column of xs has
/// zero mean and unit Euclidean norm; ys is the centered response. The
/// centering/scaling metadata allows coefficients to be mapped back to the
/// original scale.
struct StandardizedDesign {
  Eigen::MatrixXd xs;       // N x P
  Eigen::VectorXd ys;       // length N
  Eigen::VectorXd col_means;
  Eigen::VectorXd col_scales;
  double y_mean = 0.0;
  std::vector<std::string> names;

  Eigen::Index n() const { return xs.rows(); }
  Eigen::Index p() const { return xs.cols(); }
};

/// Columns mapped to the unit sphere of R^{N-1}.
struct SphereEmbedding {
  Eigen::MatrixXd z;  // (N-1) x P, unit columns

  Eigen::Index dim() const { return z.rows(); }
  Eigen::Index p() const { return z.cols(); }
};

/// Centers and rescales every predictor column to unit norm and centers the
/// response. Throws TooFewRowsError for N <= 2 and ConstantColumnError for a
/// zero-variance column.
StandardizedDesign standardize(const Dataset& d);

/// Orthonormal basis of the hyperplane orthogonal to the all-ones vector,
/// returned as an N x (N-1) matrix. Column n is proportional to
/// e_1 + ... + e_n - n e_{n+1}.
Eigen::MatrixXd basis_h(Eigen::Index n_obs);

/// Coordinates of a centered vector in the basis_h frame (H^T v). Length N
/// in, length N-1 out; preserves norms. Throws NotInHyperplaneError when v
/// is not orthogonal to the ones vector.
Eigen::VectorXd phi_forward(const Eigen::VectorXd& v);

/// Inverse map (H w). Length N-1 in, length N out; the result is centered
/// and has the same norm as w.
Eigen::VectorXd phi_inverse(const Eigen::VectorXd& w);

/// Applies phi_forward to every column of the standardized design.
SphereEmbedding embed_columns(const StandardizedDesign& sd);

}  // namespace acsel

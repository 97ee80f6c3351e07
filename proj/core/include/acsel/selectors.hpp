#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "acsel/geometry.hpp"

namespace acsel {

/// 0-1 selection vector, one entry per predictor.
using SelectionMask = std::vector<std::uint8_t>;

inline int mask_count(const SelectionMask& m) {
  int c = 0;
  for (auto b : m) c += b ? 1 : 0;
  return c;
}

/// Lasso solutions along a decreasing penalty grid for the objective
/// ||y - X b||^2 + lambda * sum |b_p|. At lambdas[0] every coefficient is
/// zero and rss is nonincreasing along the grid.
struct LassoPath {
  Eigen::VectorXd lambdas;  // strictly decreasing, positive
  Eigen::MatrixXd coefs;    // P x L
  std::vector<int> df;      // active-set size per grid point
  Eigen::VectorXd rss;      // residual sum of squares per grid point

  Eigen::Index points() const { return lambdas.size(); }
};

enum class Criterion { bic, bic2, aicc, gcv };

struct SelectorSpec {
  enum class Method { lasso, stepwise };
  Method method = Method::lasso;
  Criterion crit = Criterion::bic;
};

/// A base selection function, as consumed by the resampling wrapper.
using Selector = std::function<SelectionMask(const StandardizedDesign&)>;

/// Default penalty grid: 100 log-spaced points from lambda_max down to
/// 1e-3 * lambda_max, where lambda_max = 2 max_p |x_p . y| is the smallest
/// penalty with an all-zero solution under the objective above.
Eigen::VectorXd default_lambda_grid(const StandardizedDesign& sd);

/// Cyclic coordinate descent with warm starts and active-set iteration.
/// Converges when a full sweep moves no coefficient by more than 1e-7 and
/// the subgradient conditions hold to 1e-7; throws NoConvergenceError if a
/// grid point exceeds max_sweeps sweeps.
LassoPath lasso_path(const StandardizedDesign& sd,
                     const Eigen::VectorXd& lambdas,
                     long max_sweeps = 100000);

/// Model-choice score at one path point. BIC2 anchors its residual variance
/// at the first path point whose active set reaches size 2 (closest size as
/// a fallback). Returns +inf for degenerate df (AICc with df >= N-1, GCV
/// with df >= N), which excludes the point.
double criterion_score(const LassoPath& path, Eigen::Index at, Criterion crit,
                       Eigen::Index n_obs);

/// Support at the criterion-minimizing path point; ties break toward larger
/// lambda (the sparser model).
SelectionMask select_lasso(const StandardizedDesign& sd, Criterion crit);

/// Greedy forward selection scored by the same criteria: grows the active
/// set by the best rss decrease, stops at the first non-improving step or
/// at df = min(N-2, P).
SelectionMask select_stepwise(const StandardizedDesign& sd, Criterion crit);

/// Mask plus the fitted coefficients (standardized scale) of the chosen
/// model, for reporting. Lasso reports the path coefficients at the chosen
/// penalty; stepwise reports the least-squares fit on its active set.
struct SelectionReport {
  SelectionMask mask;
  Eigen::VectorXd coefficients;  // length P
  double lambda = 0.0;           // chosen penalty (lasso only)
  double score = 0.0;            // criterion value of the chosen model
};
SelectionReport run_selector_report(const StandardizedDesign& sd,
                                    const SelectorSpec& spec);

struct IrrepresentableResult {
  bool holds = false;
  double margin = 0.0;  // 1 - max entry
  Eigen::VectorXd values;
};

/// Evaluates |X'_out X_S (X'_S X_S)^{-1} sign(beta_S)| for the given support
/// and sign pattern. Throws SingularGramError when X'_S X_S is not
/// invertible.
IrrepresentableResult irrepresentable_check(const StandardizedDesign& sd,
                                            const std::vector<int>& support,
                                            const std::vector<int>& signs);

Criterion parse_criterion(const std::string& text);
std::string to_string(Criterion crit);

/// Parses "lasso:bic", "stepwise:aicc", ... ; a bare method name defaults
/// the criterion to BIC.
SelectorSpec parse_selector(const std::string& text);
std::string to_string(const SelectorSpec& spec);

/// Bundles spec into a callable select function.
Selector make_selector(const SelectorSpec& spec);

}  // namespace acsel

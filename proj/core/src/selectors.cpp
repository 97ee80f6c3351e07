#include "acsel/selectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "acsel/errors.hpp"

namespace acsel {

namespace {

constexpr double kCoefTol = 1e-7;
constexpr double kKktTol = 1e-7;
constexpr double kInf = std::numeric_limits<double>::infinity();

inline double soft_threshold(double value, double threshold) {
  if (value > threshold) return value - threshold;
  if (value < -threshold) return value + threshold;
  return 0.0;
}

// Residual variance anchor for BIC2: first path point with df == 2, falling
// back to the first point whose df is closest to 2.
double bic2_sigma2(const std::vector<int>& df, const Eigen::VectorXd& rss,
                   Eigen::Index n_obs) {
  Eigen::Index anchor = 0;
  int best_gap = std::numeric_limits<int>::max();
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(df.size()); ++i) {
    const int gap = std::abs(df[i] - 2);
    if (gap < best_gap) {
      best_gap = gap;
      anchor = i;
      if (gap == 0) break;
    }
  }
  const double denom = std::max<double>(static_cast<double>(n_obs) - 3.0, 1.0);
  return std::max(rss[anchor] / denom, 1e-300);
}

double score_point(double rss, int df, Criterion crit, Eigen::Index n_obs,
                   double sigma2_two) {
  const double n = static_cast<double>(n_obs);
  const double d = static_cast<double>(df);
  const double safe_rss = std::max(rss, 1e-300);
  switch (crit) {
    case Criterion::bic:
      return n * std::log(safe_rss / n) + std::log(n) * d;
    case Criterion::bic2:
      return safe_rss / sigma2_two + std::log(n) * d;
    case Criterion::aicc:
      if (d >= n - 1.0) return kInf;
      return n * std::log(safe_rss / n) + 2.0 * d +
             2.0 * d * (d + 1.0) / (n - d - 1.0);
    case Criterion::gcv: {
      if (d >= n) return kInf;
      const double h = 1.0 - d / n;
      return safe_rss / (n * h * h);
    }
  }
  return kInf;
}

struct SweepStats {
  double max_delta = 0.0;
  // each exact coordinate update lowers the objective by (delta)^2 when
  // columns have unit norm, so this tracks the sweep's objective progress
  double objective_drop = 0.0;
};

// One cyclic pass of coordinate updates over the given index set. Unit-norm
// columns make the update denominator 1. An excess within rounding noise of
// the threshold does not activate a coordinate: letting 1-ulp noise switch
// variables on puts spurious entries in the support (exact duplicate
// columns are the worst case).
SweepStats sweep(const Eigen::MatrixXd& x, Eigen::VectorXd& residual,
                 Eigen::VectorXd& beta, double half_lambda,
                 const std::vector<int>& indices) {
  SweepStats stats;
  const double dead_band = 1e-12 * half_lambda;
  for (int j : indices) {
    const double old = beta[j];
    const double rho = x.col(j).dot(residual) + old;
    double updated = soft_threshold(rho, half_lambda);
    if (std::abs(updated) <= dead_band) updated = 0.0;
    if (updated != old) {
      const double delta = updated - old;
      residual -= delta * x.col(j);
      beta[j] = updated;
      stats.max_delta = std::max(stats.max_delta, std::abs(delta));
      stats.objective_drop += delta * delta;
    }
  }
  return stats;
}

// Largest violation of the subgradient conditions at (beta, residual).
double kkt_violation(const Eigen::MatrixXd& x, const Eigen::VectorXd& residual,
                     const Eigen::VectorXd& beta, double half_lambda) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double g = x.col(j).dot(residual);
    const double v = beta[j] == 0.0
                         ? std::max(0.0, std::abs(g) - half_lambda)
                         : std::abs(g - half_lambda * (beta[j] > 0 ? 1.0 : -1.0));
    worst = std::max(worst, v);
  }
  return worst;
}

// Exact minimization over the current active set with sign pivoting.
// Coordinate descent creeps near saturation (active size close to N), so
// once it has identified a candidate set this finishes the job: solve the
// stationarity system X_A' X_A b = X_A' y - (lambda/2) sign(beta_A); if a
// coefficient comes out with the wrong sign, step to its zero crossing,
// drop it, and re-solve. Each pivot strictly lowers the objective, so the
// iteration terminates. The caller's KKT check still decides acceptance
// (an inactive variable may want in afterwards).
bool active_set_polish(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                       Eigen::VectorXd& beta, Eigen::VectorXd& residual,
                       double half_lambda) {
  std::vector<int> active;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    if (beta[j] != 0.0) active.push_back(static_cast<int>(j));
  }
  if (active.empty()) return false;
  // fresh residual: the maintained one carries drift on the scale of the
  // improvement test below
  const double old_obj = (y - x * beta).squaredNorm() +
                         2.0 * half_lambda * beta.cwiseAbs().sum();

  Eigen::VectorXd candidate = beta;
  bool moved = false;
  for (int pivot = 0; !active.empty(); ++pivot) {
    if (pivot > static_cast<int>(x.cols()) + 2) return false;
    const Eigen::Index m = static_cast<Eigen::Index>(active.size());
    Eigen::MatrixXd xa(x.rows(), m);
    Eigen::VectorXd signs(m), current(m);
    for (Eigen::Index k = 0; k < m; ++k) {
      xa.col(k) = x.col(active[k]);
      current[k] = candidate[active[k]];
      signs[k] = current[k] > 0 ? 1.0 : -1.0;
    }
    const Eigen::VectorXd rhs = xa.transpose() * y - half_lambda * signs;
    const Eigen::MatrixXd gram = xa.transpose() * xa;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    if (eig.info() != Eigen::Success) return false;
    const Eigen::VectorXd& eigval = eig.eigenvalues();
    const Eigen::MatrixXd& eigvec = eig.eigenvectors();
    const double rank_cut = 1e-11 * std::max(eigval[m - 1], 1.0);

    // A saturated set can be rank deficient. If a null direction has a
    // nonzero penalty component, the objective falls linearly along it
    // inside the sign orthant until a coefficient reaches zero; jump
    // straight to that crossing and drop the variable.
    {
      Eigen::VectorXd null_grad = Eigen::VectorXd::Zero(m);
      for (Eigen::Index e = 0; e < m; ++e) {
        if (eigval[e] <= rank_cut) {
          null_grad += eigvec.col(e) * eigvec.col(e).dot(signs);
        }
      }
      if (null_grad.cwiseAbs().maxCoeff() > 1e-8) {
        const Eigen::VectorXd descent = -null_grad;  // signs . descent < 0
        double step = std::numeric_limits<double>::infinity();
        Eigen::Index crosser = -1;
        for (Eigen::Index k = 0; k < m; ++k) {
          if (descent[k] * signs[k] < 0.0) {
            const double t = -current[k] / descent[k];
            if (t < step) {
              step = t;
              crosser = k;
            }
          }
        }
        if (crosser < 0 || !std::isfinite(step)) return false;
        for (Eigen::Index k = 0; k < m; ++k) {
          candidate[active[k]] = current[k] + step * descent[k];
        }
        candidate[active[crosser]] = 0.0;
        active.erase(active.begin() + crosser);
        moved = true;
        continue;
      }
    }

    // stationarity solve in the range space; null components stay put
    Eigen::VectorXd solved = Eigen::VectorXd::Zero(m);
    for (Eigen::Index e = 0; e < m; ++e) {
      if (eigval[e] > rank_cut) {
        solved += eigvec.col(e) * (eigvec.col(e).dot(rhs) / eigval[e]);
      } else {
        solved += eigvec.col(e) * eigvec.col(e).dot(current);
      }
    }
    if (!solved.allFinite()) return false;

    // first zero crossing on the way to the solved point
    double step = 1.0;
    Eigen::Index crosser = -1;
    for (Eigen::Index k = 0; k < m; ++k) {
      if (solved[k] * signs[k] <= 0.0) {
        const double t = current[k] / (current[k] - solved[k]);
        if (t < step) {
          step = t;
          crosser = k;
        }
      }
    }

    if (crosser < 0) {
      for (Eigen::Index k = 0; k < m; ++k) candidate[active[k]] = solved[k];
      moved = true;
      break;
    }
    for (Eigen::Index k = 0; k < m; ++k) {
      candidate[active[k]] = current[k] + step * (solved[k] - current[k]);
    }
    candidate[active[crosser]] = 0.0;
    active.erase(active.begin() + crosser);
    moved = true;
  }
  if (!moved) return false;

  const Eigen::VectorXd fresh = y - x * candidate;
  const double new_obj =
      fresh.squaredNorm() + 2.0 * half_lambda * candidate.cwiseAbs().sum();
  if (new_obj > old_obj + 1e-12 * (1.0 + old_obj)) return false;

  beta = std::move(candidate);
  residual = fresh;
  return true;
}

}  // namespace

Eigen::VectorXd default_lambda_grid(const StandardizedDesign& sd) {
  const double lambda_max =
      std::max(2.0 * (sd.xs.transpose() * sd.ys).cwiseAbs().maxCoeff(), 1e-12);
  const int points = 100;
  const double ratio = 1e-3;
  Eigen::VectorXd grid(points);
  const double step = std::log(ratio) / static_cast<double>(points - 1);
  for (int i = 0; i < points; ++i) {
    grid[i] = lambda_max * std::exp(step * i);
  }
  return grid;
}

LassoPath lasso_path(const StandardizedDesign& sd,
                     const Eigen::VectorXd& lambdas, long max_sweeps) {
  const Eigen::Index p = sd.p();
  const Eigen::Index l = lambdas.size();
  if (l == 0) throw ParseError("lasso_path: empty penalty grid");
  for (Eigen::Index i = 0; i < l; ++i) {
    if (!(lambdas[i] > 0.0) || (i > 0 && lambdas[i] >= lambdas[i - 1])) {
      throw ParseError("lasso_path: grid must be positive and decreasing");
    }
  }

  LassoPath path;
  path.lambdas = lambdas;
  path.coefs.setZero(p, l);
  path.df.assign(l, 0);
  path.rss.resize(l);

  std::vector<int> all(p);
  for (Eigen::Index j = 0; j < p; ++j) all[j] = static_cast<int>(j);
  std::vector<int> active;

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd residual = sd.ys;
  // A full sweep whose total objective improvement falls below this is a
  // coordinate-wise optimum to machine precision, which for this objective
  // is a global one; it doubles as the exit for flat regions (saturated or
  // near-duplicate designs) where coefficient changes linger above kCoefTol
  // although the fit stopped moving.
  const double stall_drop = 1e-15 * (1.0 + sd.ys.squaredNorm());

  for (Eigen::Index i = 0; i < l; ++i) {
    const double half = 0.5 * lambdas[i];
    long sweeps = 0;
    for (;;) {
      if (sweeps >= max_sweeps) {
        throw NoConvergenceError(
            "lasso_path: exceeded " + std::to_string(max_sweeps) +
                " sweeps at lambda = " + std::to_string(lambdas[i]),
            lambdas[i]);
      }
      SweepStats full = sweep(sd.xs, residual, beta, half, all);
      ++sweeps;
      const bool settled = full.objective_drop <= stall_drop;
      if (!settled && full.max_delta >= kCoefTol) {
        active.clear();
        for (Eigen::Index j = 0; j < p; ++j) {
          if (beta[j] != 0.0) active.push_back(static_cast<int>(j));
        }
        // bounded so the polish below gets its chance in creeping regimes
        long budget = 100;
        SweepStats inner;
        do {
          inner = sweep(sd.xs, residual, beta, half, active);
          ++sweeps;
        } while (--budget > 0 && inner.max_delta >= kCoefTol &&
                 inner.objective_drop > stall_drop && sweeps < max_sweeps);
      }

      if (active_set_polish(sd.xs, sd.ys, beta, residual, half)) {
        if (kkt_violation(sd.xs, residual, beta, half) < kKktTol) break;
        continue;  // an inactive variable still wants in
      }
      // fresh residual keeps the accepted point free of incremental drift
      residual = sd.ys - sd.xs * beta;
      if (settled) break;
      if (kkt_violation(sd.xs, residual, beta, half) < kKktTol) break;
    }

    path.coefs.col(i) = beta;
    path.df[i] = static_cast<int>((beta.array() != 0.0).count());
    path.rss[i] = residual.squaredNorm();
  }
  return path;
}

double criterion_score(const LassoPath& path, Eigen::Index at, Criterion crit,
                       Eigen::Index n_obs) {
  if (at < 0 || at >= path.points()) {
    throw ParseError("criterion_score: path index out of range");
  }
  const double sigma2 = crit == Criterion::bic2
                            ? bic2_sigma2(path.df, path.rss, n_obs)
                            : 1.0;
  return score_point(path.rss[at], path.df[at], crit, n_obs, sigma2);
}

namespace {

SelectionReport lasso_report(const StandardizedDesign& sd, Criterion crit) {
  const LassoPath path = lasso_path(sd, default_lambda_grid(sd));
  const double sigma2 = crit == Criterion::bic2
                            ? bic2_sigma2(path.df, path.rss, sd.n())
                            : 1.0;

  Eigen::Index best = 0;
  double best_score = kInf;
  for (Eigen::Index i = 0; i < path.points(); ++i) {
    const double s = score_point(path.rss[i], path.df[i], crit, sd.n(), sigma2);
    if (s < best_score) {
      best_score = s;
      best = i;
    }
  }

  SelectionReport report;
  report.coefficients = path.coefs.col(best);
  report.lambda = path.lambdas[best];
  report.score = best_score;
  report.mask.assign(sd.p(), 0);
  for (Eigen::Index j = 0; j < sd.p(); ++j) {
    if (path.coefs(j, best) != 0.0) report.mask[j] = 1;
  }
  return report;
}

}  // namespace

SelectionMask select_lasso(const StandardizedDesign& sd, Criterion crit) {
  return lasso_report(sd, crit).mask;
}

namespace {

SelectionReport stepwise_report(const StandardizedDesign& sd, Criterion crit) {
  const Eigen::Index n = sd.n();
  const Eigen::Index p = sd.p();
  const int cap =
      static_cast<int>(std::min<Eigen::Index>(n - 2, p));

  // Greedy forward order with its rss sequence. `remainder` holds each
  // candidate column with the current active span projected out.
  Eigen::MatrixXd remainder = sd.xs;
  Eigen::VectorXd residual = sd.ys;
  std::vector<int> order;
  std::vector<double> rss_seq;
  rss_seq.push_back(residual.squaredNorm());
  std::vector<bool> in_model(p, false);

  for (int step = 0; step < cap; ++step) {
    int best_j = -1;
    double best_gain = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      if (in_model[j]) continue;
      const double n2 = remainder.col(j).squaredNorm();
      if (n2 < 1e-10) continue;  // candidate is in the current span; skip
      const double proj = remainder.col(j).dot(residual);
      const double gain = proj * proj / n2;
      if (gain > best_gain) {
        best_gain = gain;
        best_j = static_cast<int>(j);
      }
    }
    if (best_j < 0) break;

    Eigen::VectorXd q = remainder.col(best_j).normalized();
    residual -= q * q.dot(residual);
    for (Eigen::Index j = 0; j < p; ++j) {
      if (!in_model[j]) remainder.col(j) -= q * q.dot(remainder.col(j));
    }
    in_model[best_j] = true;
    order.push_back(best_j);
    rss_seq.push_back(residual.squaredNorm());
  }

  // Score the sequence and stop at the first non-improving step.
  double sigma2 = 1.0;
  if (crit == Criterion::bic2) {
    const std::size_t anchor = std::min<std::size_t>(2, rss_seq.size() - 1);
    const double denom = std::max<double>(static_cast<double>(n) - 3.0, 1.0);
    sigma2 = std::max(rss_seq[anchor] / denom, 1e-300);
  }
  std::size_t chosen = 0;
  double score = score_point(rss_seq[0], 0, crit, n, sigma2);
  for (std::size_t k = 1; k < rss_seq.size(); ++k) {
    const double next =
        score_point(rss_seq[k], static_cast<int>(k), crit, n, sigma2);
    if (next >= score) break;
    score = next;
    chosen = k;
  }

  SelectionReport report;
  report.score = score;
  report.mask.assign(p, 0);
  report.coefficients = Eigen::VectorXd::Zero(p);
  for (std::size_t k = 0; k < chosen; ++k) report.mask[order[k]] = 1;
  if (chosen > 0) {
    Eigen::MatrixXd xs(n, chosen);
    for (std::size_t k = 0; k < chosen; ++k) xs.col(k) = sd.xs.col(order[k]);
    const Eigen::VectorXd coef = xs.colPivHouseholderQr().solve(sd.ys);
    for (std::size_t k = 0; k < chosen; ++k) {
      report.coefficients[order[k]] = coef[k];
    }
  }
  return report;
}

}  // namespace

SelectionMask select_stepwise(const StandardizedDesign& sd, Criterion crit) {
  return stepwise_report(sd, crit).mask;
}

SelectionReport run_selector_report(const StandardizedDesign& sd,
                                    const SelectorSpec& spec) {
  return spec.method == SelectorSpec::Method::lasso
             ? lasso_report(sd, spec.crit)
             : stepwise_report(sd, spec.crit);
}

IrrepresentableResult irrepresentable_check(const StandardizedDesign& sd,
                                            const std::vector<int>& support,
                                            const std::vector<int>& signs) {
  if (support.empty()) {
    throw ParseError("irrepresentable_check: empty support");
  }
  if (signs.size() != support.size()) {
    throw ParseError("irrepresentable_check: signs length mismatch");
  }
  const Eigen::Index p = sd.p();
  const Eigen::Index s = static_cast<Eigen::Index>(support.size());

  Eigen::MatrixXd xs_s(sd.n(), s);
  Eigen::VectorXd sign_vec(s);
  std::vector<bool> in_support(p, false);
  for (Eigen::Index k = 0; k < s; ++k) {
    const int j = support[k];
    if (j < 0 || j >= p) {
      throw ParseError("irrepresentable_check: support index out of range");
    }
    xs_s.col(k) = sd.xs.col(j);
    sign_vec[k] = signs[k] >= 0 ? 1.0 : -1.0;
    in_support[j] = true;
  }

  const Eigen::MatrixXd gram = xs_s.transpose() * xs_s;
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw SingularGramError(
        "irrepresentable_check: X'_S X_S is not invertible");
  }
  const Eigen::VectorXd w = llt.solve(sign_vec);

  IrrepresentableResult out;
  out.values.resize(p - s);
  Eigen::Index k = 0;
  double worst = 0.0;
  for (Eigen::Index j = 0; j < p; ++j) {
    if (in_support[j]) continue;
    const double v = std::abs(sd.xs.col(j).dot(xs_s * w));
    out.values[k++] = v;
    worst = std::max(worst, v);
  }
  out.margin = 1.0 - worst;
  out.holds = worst < 1.0;
  return out;
}

Criterion parse_criterion(const std::string& text) {
  if (text == "bic") return Criterion::bic;
  if (text == "bic2") return Criterion::bic2;
  if (text == "aicc") return Criterion::aicc;
  if (text == "gcv") return Criterion::gcv;
  throw ParseError("unknown criterion '" + text +
                   "' (expected bic, bic2, aicc or gcv)");
}

std::string to_string(Criterion crit) {
  switch (crit) {
    case Criterion::bic: return "bic";
    case Criterion::bic2: return "bic2";
    case Criterion::aicc: return "aicc";
    case Criterion::gcv: return "gcv";
  }
  return "?";
}

SelectorSpec parse_selector(const std::string& text) {
  SelectorSpec spec;
  std::string method = text;
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    method = text.substr(0, colon);
    spec.crit = parse_criterion(text.substr(colon + 1));
  }
  if (method == "lasso") {
    spec.method = SelectorSpec::Method::lasso;
  } else if (method == "stepwise") {
    spec.method = SelectorSpec::Method::stepwise;
  } else {
    throw ParseError("unknown selector '" + text +
                     "' (expected lasso[:crit] or stepwise[:crit])");
  }
  return spec;
}

std::string to_string(const SelectorSpec& spec) {
  const std::string method =
      spec.method == SelectorSpec::Method::lasso ? "lasso" : "stepwise";
  return method + ":" + to_string(spec.crit);
}

Selector make_selector(const SelectorSpec& spec) {
  if (spec.method == SelectorSpec::Method::lasso) {
    return [crit = spec.crit](const StandardizedDesign& sd) {
      return select_lasso(sd, crit);
    };
  }
  return [crit = spec.crit](const StandardizedDesign& sd) {
    return select_stepwise(sd, crit);
  };
}

}  // namespace acsel

#include "acsel/wrapper.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <mutex>

#include "acsel/errors.hpp"
#include "acsel/parallel.hpp"

namespace acsel {

namespace {
constexpr std::uint64_t kRetrySalt = 0xA5C3E17Bu;
}

ResamplePlan::ResamplePlan(const StandardizedDesign& sd,
                           const SphereEmbedding& emb, const GroupMap& gm)
    : sd_(&sd) {
  const Eigen::Index p = sd.p();
  if (gm.p() != p || emb.p() != p) {
    throw ParseError("ResamplePlan: design, embedding and group map disagree");
  }
  fits_.resize(p);
  singleton_.resize(p, true);

  for (Eigen::Index j = 0; j < p; ++j) {
    const auto& group = gm.groups[j];
    if (group.size() <= 1) continue;
    singleton_[j] = false;
    all_singletons_ = false;

    // Sign-align members to the seed variable so antipodal pairs do not
    // cancel in the resultant.
    DirectionSample aligned;
    aligned.points.resize(emb.dim(), static_cast<Eigen::Index>(group.size()));
    const Eigen::VectorXd seed_dir = emb.z.col(j);
    for (std::size_t k = 0; k < group.size(); ++k) {
      const Eigen::VectorXd member = emb.z.col(group[k]);
      aligned.points.col(static_cast<Eigen::Index>(k)) =
          member.dot(seed_dir) >= 0.0 ? member : Eigen::VectorXd(-member);
    }

    VmfParams fit;
    try {
      fit.mu = estimate_mu(aligned);
      fit.kappa = estimate_kappa(aligned);
    } catch (const ZeroResultantError&) {
      // Degenerate group: treat the variable as a singleton.
      singleton_[j] = true;
      continue;
    }
    fits_[j] = std::move(fit);
  }
}

StandardizedDesign ResamplePlan::draw(RngStream& rng) const {
  StandardizedDesign out = *sd_;
  if (all_singletons_) return out;
  for (Eigen::Index j = 0; j < sd_->p(); ++j) {
    if (singleton_[j]) continue;
    const VmfParams& fit = fits_[j];
    if (std::isinf(fit.kappa)) {
      out.xs.col(j) = phi_inverse(fit.mu);  // point mass, no randomness used
    } else {
      out.xs.col(j) = phi_inverse(sample_vmf_one(fit, rng));
    }
  }
  return out;
}

ZetaVector acsel_run(const StandardizedDesign& sd, const Selector& select,
                     const GroupMap& gm, int b_count, std::uint64_t seed,
                     int jobs) {
  if (b_count < 1) throw ParseError("acsel_run: B must be at least 1");
  const Eigen::Index p = sd.p();

  ZetaVector out;
  out.b_used = b_count;
  out.zeta.setZero(p);

  const ResamplePlan plan(sd, embed_columns(sd), gm);
  if (plan.all_singletons()) {
    // Every draw equals the input, so one selector call decides all B.
    const SelectionMask mask = select(sd);
    for (Eigen::Index j = 0; j < p; ++j) out.zeta[j] = mask[j] ? 1.0 : 0.0;
    return out;
  }

  std::vector<int> counts(p, 0);
  std::mutex merge_mutex;

  auto run_one = [&](int b) -> SelectionMask {
    RngStream stream(derive_seed(seed, static_cast<std::uint64_t>(b)));
    try {
      return select(plan.draw(stream));
    } catch (const Error&) {
      RngStream retry(
          derive_seed(seed, static_cast<std::uint64_t>(b), kRetrySalt));
      return select(plan.draw(retry));
    }
  };

  if (jobs <= 1) {
    for (int b = 0; b < b_count; ++b) {
      const SelectionMask mask = run_one(b);
      for (Eigen::Index j = 0; j < p; ++j) counts[j] += mask[j] ? 1 : 0;
    }
  } else {
    parallel_for(b_count, jobs, [&](int b) {
      const SelectionMask mask = run_one(b);
      std::lock_guard<std::mutex> lock(merge_mutex);
      for (Eigen::Index j = 0; j < p; ++j) counts[j] += mask[j] ? 1 : 0;
    });
  }

  for (Eigen::Index j = 0; j < p; ++j) {
    out.zeta[j] = static_cast<double>(counts[j]) / static_cast<double>(b_count);
  }
  return out;
}

SelectionMask select_at_threshold(const ZetaVector& z, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw ParseError("select_at_threshold: threshold must lie in (0, 1]");
  }
  SelectionMask mask(z.zeta.size(), 0);
  for (Eigen::Index j = 0; j < z.zeta.size(); ++j) {
    if (z.zeta[j] >= threshold - 1e-12) mask[j] = 1;
  }
  return mask;
}

SweepResult acsel_sweep(const StandardizedDesign& sd, const Selector& select,
                        GroupingMethod grouping, const std::vector<double>& grid,
                        int b_count, double threshold, std::uint64_t seed,
                        int jobs, CommunityAlgo algo) {
  if (grid.empty() || std::abs(grid.front() - 1.0) > 1e-12) {
    throw ParseError("acsel_sweep: c0 grid must start at 1");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] < grid[i - 1])) {
      throw ParseError("acsel_sweep: c0 grid must be strictly decreasing");
    }
  }

  const CorrelationMatrix corr = correlation(sd);

  SweepResult sr;
  sr.grid = grid;
  sr.threshold = threshold;
  sr.per_c0.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const GroupMap gm = build_groups(corr, grouping, grid[i], algo);
    SweepPoint pt;
    pt.c0 = grid[i];
    // streams keyed by the c0 value itself, so refining the grid never
    // changes the outcome at shared grid points
    pt.zeta = acsel_run(sd, select, gm, b_count,
                        derive_seed(seed, std::bit_cast<std::uint64_t>(grid[i])),
                        jobs);
    pt.selected = select_at_threshold(pt.zeta, threshold);
    sr.per_c0[i] = std::move(pt);
  }
  return sr;
}

ConfidenceVector confidence_indicators(const SweepResult& sr) {
  const Eigen::Index p =
      sr.per_c0.empty() ? 0 : sr.per_c0.front().zeta.zeta.size();
  ConfidenceVector cv;
  cv.gamma.setZero(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    double min_c0 = std::numeric_limits<double>::quiet_NaN();
    for (const auto& pt : sr.per_c0) {
      if (pt.selected[j]) min_c0 = pt.c0;  // grid is decreasing
    }
    cv.gamma[j] = std::isnan(min_c0) ? 0.0 : 1.0 - min_c0;
  }
  return cv;
}

SelectionMask naive_acsel(const StandardizedDesign& sd, const Selector& select,
                          const GroupMap& gm) {
  if (gm.p() != sd.p()) {
    throw ParseError("naive_acsel: group map does not match design");
  }
  SelectionMask mask = select(sd);
  for (Eigen::Index j = 0; j < sd.p(); ++j) {
    if (mask[j] && gm.groups[j].size() > 1) mask[j] = 0;
  }
  return mask;
}

std::vector<double> make_c0_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !(start >= stop)) {
    throw ParseError("make_c0_grid: need step > 0 and start >= stop");
  }
  const int count = static_cast<int>(std::lround((start - stop) / step)) + 1;
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i) {
    grid[i] = std::round((start - i * step) * 1e12) / 1e12;
  }
  return grid;
}

}  // namespace acsel

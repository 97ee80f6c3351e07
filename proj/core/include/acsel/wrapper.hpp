#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "acsel/geometry.hpp"
#include "acsel/grouping.hpp"
#include "acsel/selectors.hpp"
#include "acsel/vmf.hpp"

namespace acsel {

/// Per-variable selection frequencies over B perturbed designs. Every entry
/// is an exact multiple of 1/B.
struct ZetaVector {
  Eigen::VectorXd zeta;
  int b_used = 0;
};

struct SweepPoint {
  double c0 = 1.0;
  ZetaVector zeta;
  SelectionMask selected;
};

/// Records over a decreasing c0 grid starting at 1.
struct SweepResult {
  std::vector<double> grid;
  std::vector<SweepPoint> per_c0;
  double threshold = 1.0;
};

/// gamma_p = 1 - min{ c0 in grid : p selected at c0 }, or 0 when p is never
/// selected.
struct ConfidenceVector {
  Eigen::VectorXd gamma;
};

/// Precomputed directional fits for one (design, group map) pair, reused
/// across all resample indices. Each variable gets a fit of its own group,
/// sign-aligned so that every member points to the same half-space as the
/// variable itself.
class ResamplePlan {
public:
  ResamplePlan(const StandardizedDesign& sd, const SphereEmbedding& emb,
               const GroupMap& gm);

  /// One perturbed design: every variable with a non-singleton group is
  /// replaced by a fresh draw from its group fit; singleton variables keep
  /// their original column bit for bit.
  StandardizedDesign draw(RngStream& rng) const;

  bool all_singletons() const { return all_singletons_; }
  const VmfParams& fit(int variable) const { return fits_[variable]; }

private:
  const StandardizedDesign* sd_;
  std::vector<VmfParams> fits_;      // empty mu for singleton variables
  std::vector<bool> singleton_;
  bool all_singletons_ = true;
};

/// Selection frequencies from B resampled designs. Per-index streams are
/// derived from (seed, b), so any execution order and any worker count give
/// the same result. A failing selector call is retried once on a fresh
/// derived stream, then aborts.
ZetaVector acsel_run(const StandardizedDesign& sd, const Selector& select,
                     const GroupMap& gm, int b_count, std::uint64_t seed,
                     int jobs = 1);

/// bits[p] = 1 iff zeta_p >= threshold (0 < threshold <= 1).
SelectionMask select_at_threshold(const ZetaVector& z, double threshold);

/// Runs acsel_run at every grid point with independent derived streams.
/// The grid must start at 1 and be strictly decreasing.
SweepResult acsel_sweep(const StandardizedDesign& sd, const Selector& select,
                        GroupingMethod grouping, const std::vector<double>& grid,
                        int b_count, double threshold, std::uint64_t seed,
                        int jobs = 1,
                        CommunityAlgo algo = CommunityAlgo::components);

ConfidenceVector confidence_indicators(const SweepResult& sr);

/// Comparator: one base selection, then every selected variable whose group
/// is not a singleton is dropped.
SelectionMask naive_acsel(const StandardizedDesign& sd, const Selector& select,
                          const GroupMap& gm);

/// Decreasing grid helper: start, start-step, ..., down to stop (inclusive,
/// within rounding).
std::vector<double> make_c0_grid(double start, double stop, double step);

}  // namespace acsel

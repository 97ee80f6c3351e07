#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "acsel/geometry.hpp"
#include "acsel/selectors.hpp"

namespace acsel {

/// Selection frequencies over observation subsamples; probs entries are
/// multiples of 1/b_sub.
struct StabilityResult {
  Eigen::VectorXd probs;
  SelectionMask mask;
  int b_used = 0;
};

/// Subsampling comparator: b_sub subsamples of floor(frac * N) rows without
/// replacement, each re-standardized before selection; mask keeps variables
/// with probs >= pi_threshold. Streams per subsample index are derived from
/// the seed, so results do not depend on evaluation order.
StabilityResult stability_selection(const StandardizedDesign& sd,
                                    const Selector& select, int b_sub,
                                    double frac, double pi_threshold,
                                    std::uint64_t seed, int jobs = 1);

}  // namespace acsel

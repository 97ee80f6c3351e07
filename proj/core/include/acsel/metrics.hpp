#pragma once

#include <vector>

#include "acsel/selectors.hpp"

namespace acsel {

/// Benchmark indicators over a batch of selections. recall/precision/fscore
/// are averages over non-empty selections only (0 with n_nonempty == 0 when
/// every selection is empty); emptiness counts empty selections over all of
/// them.
struct MetricsRecord {
  double recall = 0.0;
  double precision = 0.0;
  double fscore = 0.0;
  double emptiness = 0.0;
  int n_nonempty = 0;
  int n_total = 0;
};

/// Per-selection values for one mask against the true support; valid only
/// for non-empty masks.
struct SelectionScore {
  double recall = 0.0;
  double precision = 0.0;
  double fscore = 0.0;
};

SelectionScore score_selection(const std::vector<int>& truth,
                               const SelectionMask& mask);

MetricsRecord compute_metrics(const std::vector<int>& truth,
                              const std::vector<SelectionMask>& masks);

}  // namespace acsel

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "acsel/grouping.hpp"
#include "acsel/metrics.hpp"
#include "acsel/selectors.hpp"
#include "acsel/simulate.hpp"
#include "acsel/wrapper.hpp"

namespace acsel {

struct ExperimentConfig {
  SimScenario scenario;
  std::vector<SelectorSpec> selectors;
  GroupingMethod grouping = GroupingMethod::naive;
  CommunityAlgo community_algo = CommunityAlgo::components;
  std::vector<double> c0_grid;  // must start at 1, strictly decreasing
  int b_count = 100;
  double threshold = 1.0;
  std::uint64_t seed = 1;
  int jobs = 1;
  bool with_naive = true;
  bool with_stability = true;
  int stability_b = 100;
  double stability_frac = 0.5;
  double stability_pi = 0.6;
  int bootstrap_resamples = 1000;

  /// Rows one replicate contributes to the replicate log.
  int rows_per_replicate() const;
};

/// Everything recorded for one replicate: the selected sets, per selector,
/// per method. Aggregates and plots are derived from these.
struct ReplicateOutcome {
  int r = 0;
  std::vector<std::vector<SelectionMask>> acsel_masks;  // [selector][c0]
  std::vector<std::vector<SelectionMask>> naive_masks;  // [selector][c0]
  std::vector<SelectionMask> stability_masks;           // [selector]
};

struct CurvePoint {
  double c0 = 1.0;
  MetricsRecord metrics;
  std::array<double, 2> recall_band{};
  std::array<double, 2> precision_band{};
  std::array<double, 2> fscore_band{};
  std::array<double, 2> emptiness_band{};
};

struct SelectorSummary {
  SelectorSpec spec;
  std::vector<CurvePoint> acsel;  // per c0
  std::vector<CurvePoint> naive;  // per c0 (empty when disabled)
  std::optional<CurvePoint> stability;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<ReplicateOutcome> replicates;
  std::vector<SelectorSummary> summaries;
};

/// One replicate, a pure function of (config, r).
ReplicateOutcome run_replicate(const ExperimentConfig& config,
                               const ScenarioSampler& sampler, int r);

/// Fills result.summaries from result.replicates (metrics + bootstrap bands).
void aggregate_experiment(ExperimentResult& result);

/// Full run: replicates on a worker pool, then aggregation.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Per-replicate precision values of non-empty selections at one grid point.
std::vector<double> precision_values(const ExperimentResult& result,
                                     int selector, int c0_index);

/// Pooled (gamma_p, in-support) pairs across replicates and variables for
/// confidence calibration.
struct ConfidencePair {
  double gamma;
  double in_support;  // 0 or 1
};
std::vector<ConfidencePair> confidence_pairs(const ExperimentResult& result,
                                             int selector);

/// Long-format aggregate rows:
/// scenario,selector,method,c0,metric,value,lo95,hi95
void write_results_csv(std::ostream& os, const ExperimentResult& result);

/// Raw selection log, one row per (selector, method, c0, replicate):
/// scenario,selector,method,c0,replicate,n_selected,n_hits,selected
/// with `selected` a space-separated list of 1-based indices or "-".
void write_replicate_log(std::ostream& os, const ExperimentResult& result);

/// Log rows only (no column header); used for incremental flushing.
void write_replicate_rows(std::ostream& os, const ExperimentConfig& config,
                          const std::vector<ReplicateOutcome>& replicates);

/// Rebuilds complete replicates from a replicate log produced by
/// write_replicate_log (header comments are skipped). Incomplete trailing
/// replicates are dropped. Used by --resume and replot.
std::vector<ReplicateOutcome> parse_replicate_log(
    const std::string& text, const ExperimentConfig& config);

}  // namespace acsel

#pragma once

#include <string>
#include <vector>

namespace acsel::cli {

struct ResultRow {
  std::string scenario, selector, method, metric;
  double c0 = 0.0;
  bool has_c0 = false;
  double value = 0.0, lo = 0.0, hi = 0.0;
};

struct ReplicateRow {
  std::string scenario, selector, method;
  double c0 = 0.0;
  bool has_c0 = false;
  int replicate = 0, n_selected = 0, n_hits = 0;
};

std::vector<ResultRow> load_results_csv(const std::string& path);
std::vector<ReplicateRow> load_replicate_csv(const std::string& path);

/// Regenerates every benchmark figure from the two CSVs: per selector the
/// four metric curves vs c0, the precision histograms at the highest,
/// middle and deepest grid points, and the precision-emptiness comparison
/// of the wrapper against its comparators. Figures carry a provenance
/// comment naming the source CSVs and their content hashes, so they are a
/// pure function of the CSV bytes.
void write_bench_figures(const std::string& out_dir,
                         const std::string& results_csv,
                         const std::string& replicates_csv);

/// Sweep figures from sweep.csv (+ optional path.csv): selection frequency
/// vs c0 per variable, and the coefficient path.
void write_sweep_figures(const std::string& out_dir,
                         const std::string& sweep_csv,
                         const std::string& path_csv);

}  // namespace acsel::cli

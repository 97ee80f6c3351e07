#pragma once

#include <string>
#include <vector>

#include "common.hpp"

namespace acsel::cli {

struct SelectArgs {
  std::string data_path;
  std::string response;
  std::string selector = "lasso:bic";
  std::string criterion;  // optional override of the selector's criterion
  CommonFlags common;
  std::string command;
};
int cmd_select(const SelectArgs& args);

struct SweepArgs {
  std::string data_path;
  std::string response;
  std::string selector = "lasso:aicc";
  std::string criterion;
  std::string grouping = "naive";
  std::string community_algo = "components";
  std::string grid = "1.0:0.35:0.05";
  int b_count = 100;
  double threshold = 1.0;
  bool dump_groups = false;
  CommonFlags common;
  std::string command;
};
int cmd_sweep(const SweepArgs& args);

struct ExpandArgs {
  std::string data_path;
  std::string response;
  std::vector<std::string> exclude_squares;
  std::string out_file = "expanded.csv";
  CommonFlags common;
  std::string command;
};
int cmd_expand(const ExpandArgs& args);

struct BenchArgs {
  std::string scenario_path;
  std::vector<std::string> selectors;  // default lasso:bic2
  std::string criterion;
  std::string grouping = "naive";
  std::string community_algo = "components";
  std::string grid = "1.0:0.5:0.05";
  int b_count = 100;
  double threshold = 1.0;
  int replicates_override = 0;  // 0: scenario value
  double snr_override = 0.0;    // 0: scenario value
  bool no_naive = false;
  bool no_stability = false;
  int stability_b = 100;
  double stability_frac = 0.5;
  double stability_pi = 0.6;
  bool resume = false;
  CommonFlags common;
  std::string command;
};
int cmd_bench(const BenchArgs& args);

struct StabilityArgs {
  std::string data_path;
  std::string response;
  std::string selector = "lasso:bic";
  std::string criterion;
  int b_sub = 100;
  double frac = 0.5;
  double pi_threshold = 0.6;
  CommonFlags common;
  std::string command;
};
int cmd_stability(const StabilityArgs& args);

struct ReplotArgs {
  std::string from_dir = ".";
  CommonFlags common;
  std::string command;
};
int cmd_replot(const ReplotArgs& args);

}  // namespace acsel::cli

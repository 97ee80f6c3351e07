#include <fstream>
#include <iostream>
#include <sstream>

#include "acsel/artifact.hpp"
#include "acsel/csv.hpp"
#include "acsel/errors.hpp"
#include "acsel/geometry.hpp"
#include "acsel/grouping.hpp"
#include "acsel/selectors.hpp"
#include "acsel/wrapper.hpp"
#include "commands.hpp"
#include "figures.hpp"

namespace acsel::cli {

namespace {

CommunityAlgo parse_community(const std::string& text) {
  if (text == "components") return CommunityAlgo::components;
  if (text == "label-prop") return CommunityAlgo::label_prop;
  throw ParseError("unknown community algorithm '" + text + "'");
}

}  // namespace

int cmd_sweep(const SweepArgs& args) {
  const CsvTable table = read_csv_table(args.data_path);
  const Dataset data = dataset_from_table(table, args.response);
  const StandardizedDesign sd = standardize(data);

  const SelectorSpec spec =
      parse_selector(with_criterion(args.selector, args.criterion));
  const GroupingMethod grouping = parse_grouping(args.grouping);
  const CommunityAlgo algo = parse_community(args.community_algo);
  const std::vector<double> grid = parse_c0_grid(args.grid);
  const int jobs = resolved_jobs(args.common);

  const SweepResult sweep =
      acsel_sweep(sd, make_selector(spec), grouping, grid, args.b_count,
                  args.threshold, args.common.seed, jobs, algo);
  const ConfidenceVector confidence = confidence_indicators(sweep);

  RunMeta meta;
  meta.command = args.command;
  meta.seed = args.common.seed;
  meta.add_input(args.data_path, args.data_path);
  meta.set("selector", to_string(spec));
  meta.set("criterion", to_string(spec.crit));
  meta.set("response", args.response);
  meta.set("grouping", to_string(grouping));
  meta.set("c0_grid", grid_to_string(grid));
  meta.set("B", args.b_count);
  meta.set("threshold", args.threshold);
  meta.set("n_obs", static_cast<int>(sd.n()));
  meta.set("n_vars", static_cast<int>(sd.p()));

  const std::string sweep_path = out_path(args.common, "sweep.csv");
  {
    std::ofstream os(sweep_path, std::ios::binary);
    write_artifact_header(os, meta);
    os << "c0,variable,zeta,selected,name\n";
    os.precision(12);
    for (const auto& pt : sweep.per_c0) {
      for (Eigen::Index j = 0; j < sd.p(); ++j) {
        os << pt.c0 << ',' << (j + 1) << ',' << pt.zeta.zeta[j] << ','
           << int(pt.selected[j]) << ',' << sd.names[j] << '\n';
      }
    }
  }

  const std::string gamma_path = out_path(args.common, "gamma.csv");
  {
    std::ofstream os(gamma_path, std::ios::binary);
    write_artifact_header(os, meta);
    os << "variable,name,gamma\n";
    os.precision(12);
    for (Eigen::Index j = 0; j < sd.p(); ++j) {
      os << (j + 1) << ',' << sd.names[j] << ',' << confidence.gamma[j] << '\n';
    }
  }

  // coefficient path of the underlying penalized fit, for the path panel
  std::string path_path;
  if (spec.method == SelectorSpec::Method::lasso) {
    path_path = out_path(args.common, "path.csv");
    const LassoPath path = lasso_path(sd, default_lambda_grid(sd));
    std::ofstream os(path_path, std::ios::binary);
    write_artifact_header(os, meta);
    os << "lambda,variable,name,coef\n";
    os.precision(12);
    for (Eigen::Index i = 0; i < path.points(); ++i) {
      for (Eigen::Index j = 0; j < sd.p(); ++j) {
        os << path.lambdas[i] << ',' << (j + 1) << ',' << sd.names[j] << ','
           << path.coefs(j, i) << '\n';
      }
    }
  }

  if (args.dump_groups) {
    const CorrelationMatrix corr = correlation(sd);
    for (double c0 : grid) {
      std::ostringstream name;
      name.precision(12);
      name << "groups_c0_" << c0 << ".txt";
      std::ofstream os(out_path(args.common, name.str()), std::ios::binary);
      write_artifact_header(os, meta);
      os << format_group_map(build_groups(corr, grouping, c0, algo));
    }
  }

  write_sweep_figures(args.common.out_dir, sweep_path, path_path);

  const auto& deepest = sweep.per_c0.back();
  std::cout << "selected at c0=1: " << mask_count(sweep.per_c0.front().selected)
            << "; at c0=" << deepest.c0 << ": " << mask_count(deepest.selected)
            << '\n';
  for (Eigen::Index j = 0; j < sd.p(); ++j) {
    if (deepest.selected[j]) {
      std::cout << "  survivor " << sd.names[j]
                << " (gamma " << confidence.gamma[j] << ")\n";
    }
  }
  std::cout << "wrote " << sweep_path << ", " << gamma_path << '\n';
  return 0;
}

}  // namespace acsel::cli

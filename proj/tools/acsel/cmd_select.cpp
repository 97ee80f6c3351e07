#include <fstream>
#include <iostream>

#include "acsel/artifact.hpp"
#include "acsel/csv.hpp"
#include "acsel/geometry.hpp"
#include "acsel/selectors.hpp"
#include "commands.hpp"

namespace acsel::cli {

int cmd_select(const SelectArgs& args) {
  const CsvTable table = read_csv_table(args.data_path);
  const Dataset data = dataset_from_table(table, args.response);
  const StandardizedDesign sd = standardize(data);

  const SelectorSpec spec =
      parse_selector(with_criterion(args.selector, args.criterion));
  const SelectionReport report = run_selector_report(sd, spec);

  // back-transform to the original scale
  Eigen::VectorXd coef_original(sd.p());
  double intercept = sd.y_mean;
  for (Eigen::Index j = 0; j < sd.p(); ++j) {
    coef_original[j] = report.coefficients[j] / sd.col_scales[j];
    intercept -= coef_original[j] * sd.col_means[j];
  }

  RunMeta meta;
  meta.command = args.command;
  meta.seed = args.common.seed;
  meta.add_input(args.data_path, args.data_path);
  meta.set("selector", to_string(spec));
  meta.set("response", args.response);
  meta.set("n_obs", static_cast<int>(sd.n()));
  meta.set("n_vars", static_cast<int>(sd.p()));
  meta.set("lambda", report.lambda);
  meta.set("score", report.score);
  meta.set("intercept", intercept);

  const std::string out = out_path(args.common, "selection.csv");
  std::ofstream os(out, std::ios::binary);
  write_artifact_header(os, meta);
  os << "variable,name,selected,coef_standardized,coef_original\n";
  os.precision(12);
  for (Eigen::Index j = 0; j < sd.p(); ++j) {
    os << (j + 1) << ',' << sd.names[j] << ',' << int(report.mask[j]) << ','
       << report.coefficients[j] << ',' << coef_original[j] << '\n';
  }
  os.close();

  std::cout << "selected " << mask_count(report.mask) << " of " << sd.p()
            << " variables (" << to_string(spec) << ")\n";
  for (Eigen::Index j = 0; j < sd.p(); ++j) {
    if (report.mask[j]) {
      std::cout << "  " << sd.names[j] << "  coef " << coef_original[j] << '\n';
    }
  }
  std::cout << "intercept " << intercept << "\nwrote " << out << '\n';
  return 0;
}

}  // namespace acsel::cli

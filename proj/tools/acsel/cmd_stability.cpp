#include <fstream>
#include <iostream>

#include "acsel/artifact.hpp"
#include "acsel/csv.hpp"
#include "acsel/geometry.hpp"
#include "acsel/stability.hpp"
#include "commands.hpp"

namespace acsel::cli {

int cmd_stability(const StabilityArgs& args) {
  const CsvTable table = read_csv_table(args.data_path);
  const Dataset data = dataset_from_table(table, args.response);
  const StandardizedDesign sd = standardize(data);

  const SelectorSpec spec =
      parse_selector(with_criterion(args.selector, args.criterion));
  const StabilityResult result = stability_selection(
      sd, make_selector(spec), args.b_sub, args.frac, args.pi_threshold,
      args.common.seed, resolved_jobs(args.common));

  RunMeta meta;
  meta.command = args.command;
  meta.seed = args.common.seed;
  meta.add_input(args.data_path, args.data_path);
  meta.set("selector", to_string(spec));
  meta.set("response", args.response);
  meta.set("B_sub", args.b_sub);
  meta.set("frac", args.frac);
  meta.set("pi_threshold", args.pi_threshold);

  const std::string out = out_path(args.common, "stability.csv");
  std::ofstream os(out, std::ios::binary);
  write_artifact_header(os, meta);
  os << "variable,name,prob,selected\n";
  os.precision(12);
  for (Eigen::Index j = 0; j < sd.p(); ++j) {
    os << (j + 1) << ',' << sd.names[j] << ',' << result.probs[j] << ','
       << int(result.mask[j]) << '\n';
  }
  os.close();

  std::cout << "stability selection kept " << mask_count(result.mask) << " of "
            << sd.p() << " variables; wrote " << out << '\n';
  return 0;
}

}  // namespace acsel::cli

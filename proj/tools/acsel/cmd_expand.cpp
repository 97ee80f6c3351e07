#include <fstream>
#include <iostream>

#include "acsel/artifact.hpp"
#include "acsel/csv.hpp"
#include "commands.hpp"

namespace acsel::cli {

int cmd_expand(const ExpandArgs& args) {
  const CsvTable table = read_csv_table(args.data_path);
  const CsvTable expanded =
      expand_interactions(table, args.response, args.exclude_squares);

  RunMeta meta;
  meta.command = args.command;
  meta.seed = args.common.seed;
  meta.add_input(args.data_path, args.data_path);
  meta.set("response", args.response);
  for (const auto& name : args.exclude_squares) {
    meta.set("exclude_square", name);
  }

  const std::string out = out_path(args.common, args.out_file);
  std::ofstream os(out, std::ios::binary);
  write_artifact_header(os, meta);
  write_csv_table(os, expanded);
  os.close();

  const int predictors =
      static_cast<int>(expanded.cols()) - (args.response.empty() ? 0 : 1);
  std::cout << "expanded to " << predictors << " predictors; wrote " << out
            << '\n';
  return 0;
}

}  // namespace acsel::cli

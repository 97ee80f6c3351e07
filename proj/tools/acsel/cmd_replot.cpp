#include <filesystem>
#include <iostream>

#include "acsel/errors.hpp"
#include "commands.hpp"
#include "figures.hpp"

namespace acsel::cli {

int cmd_replot(const ReplotArgs& args) {
  namespace fs = std::filesystem;
  const fs::path dir(args.from_dir);
  const fs::path results = dir / "results.csv";
  const fs::path replicates = dir / "replicates.csv";
  const fs::path sweep = dir / "sweep.csv";
  bool did_something = false;

  if (fs::exists(results) && fs::exists(replicates)) {
    write_bench_figures(dir.string(), results.string(), replicates.string());
    std::cout << "regenerated benchmark figures in " << dir.string() << '\n';
    did_something = true;
  }
  if (fs::exists(sweep)) {
    const fs::path path_csv = dir / "path.csv";
    write_sweep_figures(dir.string(), sweep.string(),
                        fs::exists(path_csv) ? path_csv.string() : "");
    std::cout << "regenerated sweep figures in " << dir.string() << '\n';
    did_something = true;
  }
  if (!did_something) {
    throw ParseError("no results.csv/replicates.csv or sweep.csv under '" +
                     args.from_dir + "'");
  }
  return 0;
}

}  // namespace acsel::cli

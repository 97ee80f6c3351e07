#include <CLI11.hpp>
#include <iostream>

#include "acsel/errors.hpp"
#include "acsel/version.hpp"
#include "commands.hpp"

using namespace acsel;
using namespace acsel::cli;

namespace {

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--seed", flags.seed, "Master seed for all randomness");
  cmd->add_option("--out", flags.out_dir, "Output directory");
  cmd->add_option("--jobs", flags.jobs, "Worker threads (0 = hardware)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AcSel: resampling wrapper for reliable variable selection"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Key=value config file (flags take precedence)");
  app.set_version_flag("--version", std::string(kVersion));
  app.footer(
      "Selectors are method:criterion, e.g. lasso:bic, lasso:bic2, lasso:aicc,\n"
      "lasso:gcv, stepwise:bic. The penalized objective is ||y-Xb||^2 + "
      "lambda*sum|b|,\nso the all-zero penalty threshold is lambda_max = 2 "
      "max_p |x_p.y|.");

  const std::string command = command_line(argc, argv);

  SelectArgs select_args;
  select_args.command = command;
  auto* select = app.add_subcommand("select", "Run a base selector on a CSV");
  select->add_option("data", select_args.data_path, "Input CSV")->required();
  select->add_option("--response", select_args.response, "Response column name")
      ->required();
  select->add_option("--selector", select_args.selector, "method:criterion");
  select->add_option("--criterion", select_args.criterion,
                     "Criterion override (bic, bic2, aicc, gcv)");
  add_common(select, select_args.common);

  SweepArgs sweep_args;
  sweep_args.command = command;
  auto* sweep = app.add_subcommand(
      "sweep", "Wrapper sweep over a c0 grid with confidence indicators");
  sweep->add_option("data", sweep_args.data_path, "Input CSV")->required();
  sweep->add_option("--response", sweep_args.response, "Response column name")
      ->required();
  sweep->add_option("--selector", sweep_args.selector, "method:criterion");
  sweep->add_option("--criterion", sweep_args.criterion,
                    "Criterion override (bic, bic2, aicc, gcv)");
  sweep->add_option("--grouping", sweep_args.grouping, "naive or community");
  sweep->add_option("--community-algo", sweep_args.community_algo,
                    "components or label-prop");
  sweep->add_option("--c0-grid", sweep_args.grid,
                    "start:stop:step or comma list, decreasing from 1");
  sweep->add_option("--B", sweep_args.b_count, "Resamples per grid point");
  sweep->add_option("--threshold", sweep_args.threshold,
                    "Selection frequency threshold in (0,1]");
  sweep->add_flag("--dump-groups", sweep_args.dump_groups,
                  "Write group maps per grid point");
  add_common(sweep, sweep_args.common);

  ExpandArgs expand_args;
  expand_args.command = command;
  auto* expand = app.add_subcommand("expand-interactions",
                                    "Append pairwise products as columns");
  expand->add_option("data", expand_args.data_path, "Input CSV")->required();
  expand->add_option("--response", expand_args.response,
                     "Response column passed through unchanged");
  expand->add_option("--exclude-square", expand_args.exclude_squares,
                     "Column whose square is skipped (repeatable)");
  expand->add_option("--out-file", expand_args.out_file, "Output file name");
  add_common(expand, expand_args.common);

  BenchArgs bench_args;
  bench_args.command = command;
  auto* bench =
      app.add_subcommand("bench", "Replicated simulation benchmark grid");
  bench->add_option("scenario", bench_args.scenario_path, "Scenario file")
      ->required();
  bench->add_option("--selector", bench_args.selectors,
                    "method:criterion (repeatable)");
  bench->add_option("--criterion", bench_args.criterion,
                    "Criterion override applied to every selector");
  bench->add_option("--grouping", bench_args.grouping, "naive or community");
  bench->add_option("--community-algo", bench_args.community_algo,
                    "components or label-prop");
  bench->add_option("--c0-grid", bench_args.grid,
                    "start:stop:step or comma list, decreasing from 1");
  bench->add_option("--B", bench_args.b_count, "Resamples per grid point");
  bench->add_option("--threshold", bench_args.threshold,
                    "Selection frequency threshold in (0,1]");
  bench->add_option("--replicates", bench_args.replicates_override,
                    "Override scenario replicate count");
  bench->add_option("--snr", bench_args.snr_override,
                    "Override scenario signal-to-noise ratio");
  bench->add_flag("--no-naive", bench_args.no_naive,
                  "Skip the naive comparator");
  bench->add_flag("--no-stability", bench_args.no_stability,
                  "Skip the stability-selection comparator");
  bench->add_option("--stability-B", bench_args.stability_b,
                    "Subsamples for stability selection");
  bench->add_option("--stability-frac", bench_args.stability_frac,
                    "Subsample fraction");
  bench->add_option("--stability-pi", bench_args.stability_pi,
                    "Stability probability threshold");
  bench->add_flag("--resume", bench_args.resume,
                  "Reuse completed replicates from replicates.csv");
  add_common(bench, bench_args.common);

  StabilityArgs stability_args;
  stability_args.command = command;
  auto* stability = app.add_subcommand(
      "stability", "Stability selection over observation subsamples");
  stability->add_option("data", stability_args.data_path, "Input CSV")
      ->required();
  stability
      ->add_option("--response", stability_args.response,
                   "Response column name")
      ->required();
  stability->add_option("--selector", stability_args.selector,
                        "method:criterion");
  stability->add_option("--criterion", stability_args.criterion,
                        "Criterion override (bic, bic2, aicc, gcv)");
  stability->add_option("--B", stability_args.b_sub, "Subsample count");
  stability->add_option("--frac", stability_args.frac, "Subsample fraction");
  stability->add_option("--pi", stability_args.pi_threshold,
                        "Probability threshold in (0.5, 1]");
  add_common(stability, stability_args.common);

  ReplotArgs replot_args;
  replot_args.command = command;
  auto* replot =
      app.add_subcommand("replot", "Regenerate figures from existing CSVs");
  replot->add_option("--from", replot_args.from_dir,
                     "Directory holding the CSVs");
  add_common(replot, replot_args.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*select) return cmd_select(select_args);
    if (*sweep) return cmd_sweep(sweep_args);
    if (*expand) return cmd_expand(expand_args);
    if (*bench) return cmd_bench(bench_args);
    if (*stability) return cmd_stability(stability_args);
    if (*replot) return cmd_replot(replot_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::invalid_input ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}

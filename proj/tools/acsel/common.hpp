#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "acsel/artifact.hpp"
#include "acsel/grouping.hpp"
#include "acsel/selectors.hpp"

namespace acsel::cli {

/// Flags shared by every subcommand.
struct CommonFlags {
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  int jobs = 0;  // 0: hardware default
};

int resolved_jobs(const CommonFlags& flags);

/// Reconstructs the command line for artifact headers.
std::string command_line(int argc, char** argv);

/// Parses either "start:stop:step" or a comma-separated decreasing list.
std::vector<double> parse_c0_grid(const std::string& text);

std::string grid_to_string(const std::vector<double>& grid);

/// Creates the output directory if needed and returns path + "/" + name.
std::string out_path(const CommonFlags& flags, const std::string& name);

/// Replaces characters that are awkward in file names (':' -> '-').
std::string sanitize(const std::string& name);

/// Applies a --criterion override to a method[:criterion] selector string.
std::string with_criterion(const std::string& selector,
                           const std::string& criterion);

}  // namespace acsel::cli

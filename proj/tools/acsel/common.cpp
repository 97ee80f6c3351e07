#include "common.hpp"

#include <sstream>

#include "acsel/errors.hpp"
#include "acsel/parallel.hpp"
#include "acsel/wrapper.hpp"

namespace acsel::cli {

int resolved_jobs(const CommonFlags& flags) {
  return flags.jobs > 0 ? flags.jobs : default_jobs();
}

std::string command_line(int argc, char** argv) {
  std::ostringstream os;
  for (int i = 0; i < argc; ++i) {
    if (i) os << ' ';
    os << argv[i];
  }
  return os.str();
}

std::vector<double> parse_c0_grid(const std::string& text) {
  std::vector<double> grid;
  const auto parse = [&](const std::string& token) {
    try {
      return std::stod(token);
    } catch (const std::exception&) {
      throw ParseError("cannot parse c0 grid value '" + token + "'");
    }
  };

  if (text.find(':') != std::string::npos) {
    std::stringstream ss(text);
    std::string start_s, stop_s, step_s;
    if (!std::getline(ss, start_s, ':') || !std::getline(ss, stop_s, ':') ||
        !std::getline(ss, step_s)) {
      throw ParseError("grid range must be start:stop:step");
    }
    return make_c0_grid(parse(start_s), parse(stop_s), parse(step_s));
  }

  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) grid.push_back(parse(token));
  if (grid.empty()) throw ParseError("empty c0 grid");
  return grid;
}

std::string grid_to_string(const std::vector<double>& grid) {
  std::ostringstream os;
  os.precision(12);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i) os << ',';
    os << grid[i];
  }
  return os.str();
}

std::string out_path(const CommonFlags& flags, const std::string& name) {
  std::filesystem::create_directories(flags.out_dir);
  return (std::filesystem::path(flags.out_dir) / name).string();
}

std::string with_criterion(const std::string& selector,
                           const std::string& criterion) {
  if (criterion.empty()) return selector;
  const auto colon = selector.find(':');
  return (colon == std::string::npos ? selector : selector.substr(0, colon)) +
         ":" + criterion;
}

std::string sanitize(const std::string& name) {
  std::string out = name;
  for (char& c : out) {
    if (c == ':' || c == '/' || c == ' ') c = '-';
  }
  return out;
}

}  // namespace acsel::cli

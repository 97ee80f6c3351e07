#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace acsel {

/// Reproducibility metadata written at the top of every output file as '#'
/// comment lines: tool version, exact command line, master seed, input
/// content hashes and the resolved configuration.
struct RunMeta {
  std::string command;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> inputs;  // name, hash
  std::vector<std::pair<std::string, std::string>> config;  // key, value

  void add_input(const std::string& name, const std::string& path);
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, int value);
};

void write_artifact_header(std::ostream& os, const RunMeta& meta);

/// FNV-1a 64-bit content hash, hex encoded.
std::string fnv1a_hex(const std::string& bytes);
std::string fnv1a_file_hex(const std::string& path);

}  // namespace acsel

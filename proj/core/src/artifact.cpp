#include "acsel/artifact.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "acsel/errors.hpp"
#include "acsel/version.hpp"

namespace acsel {

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string fnv1a_file_hex(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "' for hashing");
  std::ostringstream buf;
  buf << in.rdbuf();
  return fnv1a_hex(buf.str());
}

void RunMeta::add_input(const std::string& name, const std::string& path) {
  inputs.emplace_back(name, fnv1a_file_hex(path));
}

void RunMeta::set(const std::string& key, const std::string& value) {
  config.emplace_back(key, value);
}

void RunMeta::set(const std::string& key, double value) {
  std::ostringstream os;
  os.precision(12);
  os << value;
  config.emplace_back(key, os.str());
}

void RunMeta::set(const std::string& key, int value) {
  config.emplace_back(key, std::to_string(value));
}

void write_artifact_header(std::ostream& os, const RunMeta& meta) {
  os << "# acsel " << kVersion << '\n';
  os << "# command: " << meta.command << '\n';
  os << "# seed: " << meta.seed << '\n';
  for (const auto& [name, hash] : meta.inputs) {
    os << "# input: " << name << " fnv1a=" << hash << '\n';
  }
  for (const auto& [key, value] : meta.config) {
    os << "# config: " << key << "=" << value << '\n';
  }
}

}  // namespace acsel

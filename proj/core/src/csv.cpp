#include "acsel/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "acsel/errors.hpp"

namespace acsel {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

bool parse_cell(const std::string& text, double& out) {
  if (text.empty()) return false;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto res = std::from_chars(begin, end, out);
  return res.ec == std::errc() && res.ptr == end;
}

}  // namespace

int CsvTable::column_index(const std::string& name) const {
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (names[j] == name) return static_cast<int>(j);
  }
  return -1;
}

CsvTable parse_csv_table(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;

  CsvTable table;
  std::vector<std::vector<double>> rows;
  bool header_seen = false;
  std::size_t width = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const std::vector<std::string> cells = split_csv_line(stripped);

    if (!header_seen) {
      header_seen = true;
      width = cells.size();
      bool all_numeric = true;
      std::vector<double> first(width);
      for (std::size_t j = 0; j < width; ++j) {
        if (!parse_cell(cells[j], first[j])) {
          all_numeric = false;
          break;
        }
      }
      if (all_numeric) {
        table.names.resize(width);
        for (std::size_t j = 0; j < width; ++j) {
          table.names[j] = "col" + std::to_string(j + 1);
        }
        rows.push_back(std::move(first));
      } else {
        table.names = cells;
      }
      continue;
    }

    if (cells.size() != width) {
      throw ParseError(origin + " line " + std::to_string(line_no) + ": got " +
                       std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(width));
    }
    std::vector<double> row(width);
    for (std::size_t j = 0; j < width; ++j) {
      if (!parse_cell(cells[j], row[j])) {
        throw ParseError(origin + " line " + std::to_string(line_no) +
                         ": cell '" + cells[j] + "' is not numeric");
      }
    }
    rows.push_back(std::move(row));
  }

  if (!header_seen || rows.empty()) {
    throw ParseError(origin + ": no data rows");
  }
  table.values.resize(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      table.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
    }
  }
  return table;
}

CsvTable read_csv_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv_table(buf.str(), path);
}

int StringTable::column_index(const std::string& name) const {
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j] == name) return static_cast<int>(j);
  }
  return -1;
}

StringTable read_string_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  StringTable table;
  std::string line;
  while (std::getline(in, line)) {
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    if (table.header.empty()) {
      table.header = split_csv_line(stripped);
    } else {
      table.rows.push_back(split_csv_line(stripped));
    }
  }
  if (table.header.empty()) throw ParseError(path + ": empty csv");
  return table;
}

void write_csv_table(std::ostream& os, const CsvTable& table) {
  for (std::size_t j = 0; j < table.names.size(); ++j) {
    os << (j ? "," : "") << table.names[j];
  }
  os << '\n';
  std::ostringstream cell;
  cell.precision(12);
  for (Eigen::Index i = 0; i < table.rows(); ++i) {
    for (Eigen::Index j = 0; j < table.cols(); ++j) {
      cell.str("");
      cell << table.values(i, j);
      os << (j ? "," : "") << cell.str();
    }
    os << '\n';
  }
}

Dataset dataset_from_table(const CsvTable& table, const std::string& response) {
  const int yi = table.column_index(response);
  if (yi < 0) {
    throw ParseError("response column '" + response + "' not found");
  }
  Dataset d;
  d.y = table.values.col(yi);
  d.x.resize(table.rows(), table.cols() - 1);
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < table.cols(); ++j) {
    if (j == yi) continue;
    d.x.col(k) = table.values.col(j);
    d.names.push_back(table.names[j]);
    ++k;
  }
  if (d.p() == 0) throw ParseError("no predictor columns in input");
  return d;
}

CsvTable expand_interactions(const CsvTable& table, const std::string& response,
                             const std::vector<std::string>& exclude_squares) {
  const int yi = table.column_index(response);
  std::vector<int> base;
  for (Eigen::Index j = 0; j < table.cols(); ++j) {
    if (static_cast<int>(j) != yi) base.push_back(static_cast<int>(j));
  }
  if (base.size() < 2) {
    throw ParseError("expand_interactions: need at least 2 predictors");
  }

  auto excluded = [&](const std::string& name) {
    return std::find(exclude_squares.begin(), exclude_squares.end(), name) !=
           exclude_squares.end();
  };

  CsvTable out;
  out.names = table.names;
  std::vector<std::pair<int, int>> products;
  for (std::size_t a = 0; a < base.size(); ++a) {
    for (std::size_t b = a; b < base.size(); ++b) {
      if (a == b && excluded(table.names[base[a]])) continue;
      products.emplace_back(base[a], base[b]);
      out.names.push_back(table.names[base[a]] + ":" + table.names[base[b]]);
    }
  }

  out.values.resize(table.rows(),
                    table.cols() + static_cast<Eigen::Index>(products.size()));
  out.values.leftCols(table.cols()) = table.values;
  for (std::size_t k = 0; k < products.size(); ++k) {
    out.values.col(table.cols() + static_cast<Eigen::Index>(k)) =
        table.values.col(products[k].first).array() *
        table.values.col(products[k].second).array();
  }
  return out;
}

}  // namespace acsel

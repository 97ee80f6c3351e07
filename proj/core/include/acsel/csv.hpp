#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "acsel/geometry.hpp"

namespace acsel {

/// A numeric table: named columns, comma separated, '#' comment lines and an
/// optional header row.
struct CsvTable {
  std::vector<std::string> names;
  Eigen::MatrixXd values;  // rows x columns

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
  int column_index(const std::string& name) const;  // -1 when absent
};

/// Reads a numeric CSV. When the first non-comment row contains any
/// non-numeric cell it is taken as the header; otherwise columns are named
/// col1..colP. Throws ParseError with a line number on malformed input.
CsvTable read_csv_table(const std::string& path);
CsvTable parse_csv_table(const std::string& text, const std::string& origin);

/// Raw string rows of a CSV, '#' comment lines skipped, first row split off
/// as the header. Used to re-read the tool's own mixed-type outputs.
struct StringTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column_index(const std::string& name) const;  // -1 when absent
};
StringTable read_string_csv(const std::string& path);

void write_csv_table(std::ostream& os, const CsvTable& table);

/// Splits the named response column off a table.
Dataset dataset_from_table(const CsvTable& table, const std::string& response);

/// Appends all pairwise products x_i * x_j (i <= j, squares included) as new
/// columns named "a:b". Squares of columns listed in exclude_squares are
/// skipped. The response column, when named, is carried through unchanged at
/// its original position.
CsvTable expand_interactions(const CsvTable& table, const std::string& response,
                             const std::vector<std::string>& exclude_squares);

}  // namespace acsel

#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace bogospec {

/// Typed tabular results. Reals are serialized with a fixed "%.12e" format so
/// repeated runs produce byte-identical files; parse-then-serialize is a
/// fixed point.
using Cell = std::variant<double, std::int64_t, std::string, bool>;

enum class CellType { real, integer, text, boolean };

struct Column {
  std::string name;
  CellType type;
};

struct Table {
  std::string name;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

struct ResultBundle {
  std::string command;
  std::vector<std::pair<std::string, std::string>> meta;  // config echo etc.
  std::vector<Table> tables;
};

std::string format_real(double x);  // %.12e

std::string to_csv(const Table& table);
std::string to_json(const ResultBundle& bundle);

Table parse_csv(const std::string& text, const std::string& name,
                const std::vector<Column>& columns);
ResultBundle parse_json(const std::string& text);

bool equal_values(const Table& a, const Table& b);

/// Writes <dir>/<table name>.csv and/or a single <dir>/<command>.json.
/// Returns the paths written.
std::vector<std::string> write_bundle(const ResultBundle& bundle, const std::string& dir,
                                      bool csv, bool json);

}  // namespace bogospec

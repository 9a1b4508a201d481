#include "bogospec/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace bogospec {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::invalid_argument("Table: row width mismatch");
  rows.push_back(std::move(row));
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", x);
  return buf;
}

namespace {

std::string cell_text(const Cell& c) {
  switch (c.index()) {
    case 0:
      return format_real(std::get<double>(c));
    case 1:
      return std::to_string(std::get<std::int64_t>(c));
    case 2:
      return std::get<std::string>(c);
    default:
      return std::get<bool>(c) ? "1" : "0";
  }
}

Cell cell_from_text(const std::string& text, CellType type) {
  switch (type) {
    case CellType::real:
      return std::strtod(text.c_str(), nullptr);
    case CellType::integer:
      return static_cast<std::int64_t>(std::strtoll(text.c_str(), nullptr, 10));
    case CellType::text:
      return text;
    case CellType::boolean:
      return text == "1" || text == "true";
  }
  return text;
}

const char* type_name(CellType t) {
  switch (t) {
    case CellType::real:
      return "real";
    case CellType::integer:
      return "integer";
    case CellType::text:
      return "text";
    case CellType::boolean:
      return "boolean";
  }
  return "text";
}

CellType type_from_name(const std::string& s) {
  if (s == "real") return CellType::real;
  if (s == "integer") return CellType::integer;
  if (s == "boolean") return CellType::boolean;
  return CellType::text;
}

void json_escape(std::ostringstream& out, const std::string& s) {
  out << '"';
  for (char ch : s) {
    switch (ch) {
      case '"':
        out << "\\\"";
        break;
      case '\\':
        out << "\\\\";
        break;
      case '\n':
        out << "\\n";
        break;
      case '\t':
        out << "\\t";
        break;
      default:
        out << ch;
    }
  }
  out << '"';
}

}  // namespace

std::string to_csv(const Table& table) {
  std::ostringstream out;
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    out << (c ? "," : "") << table.columns[c].name;
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << cell_text(row[c]);
    out << "\n";
  }
  return out.str();
}

std::string to_json(const ResultBundle& bundle) {
  // written by hand so reals keep the fixed %.12e format
  std::ostringstream out;
  out << "{\n  \"command\": ";
  json_escape(out, bundle.command);
  out << ",\n  \"meta\": {";
  for (std::size_t i = 0; i < bundle.meta.size(); ++i) {
    out << (i ? ", " : "");
    json_escape(out, bundle.meta[i].first);
    out << ": ";
    json_escape(out, bundle.meta[i].second);
  }
  out << "},\n  \"tables\": [";
  for (std::size_t t = 0; t < bundle.tables.size(); ++t) {
    const Table& tab = bundle.tables[t];
    out << (t ? ",\n" : "\n") << "    {\"name\": ";
    json_escape(out, tab.name);
    out << ", \"columns\": [";
    for (std::size_t c = 0; c < tab.columns.size(); ++c) {
      out << (c ? ", " : "");
      json_escape(out, tab.columns[c].name);
    }
    out << "], \"types\": [";
    for (std::size_t c = 0; c < tab.columns.size(); ++c) {
      out << (c ? ", " : "") << '"' << type_name(tab.columns[c].type) << '"';
    }
    out << "],\n     \"rows\": [";
    for (std::size_t r = 0; r < tab.rows.size(); ++r) {
      out << (r ? ", " : "") << "[";
      for (std::size_t c = 0; c < tab.rows[r].size(); ++c) {
        const Cell& cell = tab.rows[r][c];
        out << (c ? ", " : "");
        if (cell.index() == 0)
          out << format_real(std::get<double>(cell));
        else if (cell.index() == 1)
          out << std::get<std::int64_t>(cell);
        else if (cell.index() == 2)
          json_escape(out, std::get<std::string>(cell));
        else
          out << (std::get<bool>(cell) ? "true" : "false");
      }
      out << "]";
    }
    out << "]}";
  }
  out << "\n  ]\n}\n";
  return out.str();
}

Table parse_csv(const std::string& text, const std::string& name,
                const std::vector<Column>& columns) {
  Table table;
  table.name = name;
  table.columns = columns;

  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (header) {
      if (fields.size() != columns.size()) throw std::invalid_argument("parse_csv: header width mismatch");
      header = false;
      continue;
    }
    std::vector<Cell> row;
    for (std::size_t c = 0; c < fields.size(); ++c) row.push_back(cell_from_text(fields[c], columns[c].type));
    table.add_row(std::move(row));
  }
  return table;
}

ResultBundle parse_json(const std::string& text) {
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(text);
  ResultBundle b;
  b.command = j.at("command").get<std::string>();
  for (auto& [k, v] : j.at("meta").items()) b.meta.emplace_back(k, v.get<std::string>());
  for (auto& tj : j.at("tables")) {
    Table t;
    t.name = tj.at("name").get<std::string>();
    auto names = tj.at("columns");
    auto types = tj.at("types");
    for (std::size_t c = 0; c < names.size(); ++c)
      t.columns.push_back({names[c].get<std::string>(), type_from_name(types[c].get<std::string>())});
    for (auto& rj : tj.at("rows")) {
      std::vector<Cell> row;
      for (std::size_t c = 0; c < rj.size(); ++c) {
        switch (t.columns[c].type) {
          case CellType::real:
            row.emplace_back(rj[c].get<double>());
            break;
          case CellType::integer:
            row.emplace_back(rj[c].get<std::int64_t>());
            break;
          case CellType::text:
            row.emplace_back(rj[c].get<std::string>());
            break;
          case CellType::boolean:
            row.emplace_back(rj[c].get<bool>());
            break;
        }
      }
      t.add_row(std::move(row));
    }
    b.tables.push_back(std::move(t));
  }
  return b;
}

bool equal_values(const Table& a, const Table& b) {
  if (a.columns.size() != b.columns.size() || a.rows.size() != b.rows.size()) return false;
  for (std::size_t r = 0; r < a.rows.size(); ++r)
    for (std::size_t c = 0; c < a.columns.size(); ++c) {
      // compare through the serialized form: %.12e is the contract
      if (cell_text(a.rows[r][c]) != cell_text(b.rows[r][c])) return false;
    }
  return true;
}

std::vector<std::string> write_bundle(const ResultBundle& bundle, const std::string& dir,
                                      bool csv, bool json) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> written;
  if (csv) {
    for (const auto& t : bundle.tables) {
      auto path = (std::filesystem::path(dir) / (t.name + ".csv")).string();
      std::ofstream out(path, std::ios::binary);
      out << to_csv(t);
      written.push_back(path);
    }
  }
  if (json) {
    auto path = (std::filesystem::path(dir) / (bundle.command + ".json")).string();
    std::ofstream out(path, std::ios::binary);
    out << to_json(bundle);
    written.push_back(path);
  }
  return written;
}

}  // namespace bogospec

#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hgevo::tools {

// Plain comma-separated table with a header row; no quoting.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) {
        return i;
      }
    }
    throw std::invalid_argument("no column named '" + name + "'");
  }
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream stream(line);
  std::string field;
  while (std::getline(stream, field, ',')) {
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == ',') {
    fields.emplace_back();
  }
  return fields;
}

inline CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("table has no header row");
  }
  table.header = split_csv_line(line);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    auto fields = split_csv_line(line);
    if (fields.size() != table.header.size()) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(table.header.size()) + " fields");
    }
    table.rows.push_back(std::move(fields));
  }
  return table;
}

inline double to_double(const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  return value;
}

// "name=value" filters, all of which a row must satisfy.
inline std::vector<std::vector<std::string>> filter_rows(
    const CsvTable& table, const std::vector<std::string>& filters) {
  std::vector<std::pair<std::size_t, std::string>> conditions;
  for (const std::string& filter : filters) {
    const auto eq = filter.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("filter '" + filter + "' is not of the form column=value");
    }
    conditions.emplace_back(table.column(filter.substr(0, eq)), filter.substr(eq + 1));
  }
  std::vector<std::vector<std::string>> result;
  for (const auto& row : table.rows) {
    bool keep = true;
    for (const auto& [index, value] : conditions) {
      keep = keep && row[index] == value;
    }
    if (keep) {
      result.push_back(row);
    }
  }
  return result;
}

}  // namespace hgevo::tools

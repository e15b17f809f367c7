#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace discframe {

// One table entry: absent, integer, real, or text. Absent cells serialize to
// an empty CSV field / a JSON null.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct ReportTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  // Ordered key/value pairs echoed into the JSON provenance object; insertion
  // order is emission order, so identical configurations produce identical
  // bytes.
  std::vector<std::pair<std::string, std::string>> provenance;
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Shortest round-tripping decimal form of a double.
inline std::string format_real(double value) {
  if (!std::isfinite(value)) return {};
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace detail {

inline std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string json_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size() + 2);
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

inline std::string cell_to_csv(const Cell& cell) {
  if (std::holds_alternative<std::monostate>(cell)) return {};
  if (const auto* i = std::get_if<std::int64_t>(&cell))
    return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&cell)) return format_real(*d);
  return csv_escape(std::get<std::string>(cell));
}

inline std::string cell_to_json(const Cell& cell) {
  if (std::holds_alternative<std::monostate>(cell)) return "null";
  if (const auto* i = std::get_if<std::int64_t>(&cell))
    return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&cell)) {
    const std::string s = format_real(*d);
    return s.empty() ? "null" : s;
  }
  return "\"" + json_escape(std::get<std::string>(cell)) + "\"";
}

}  // namespace detail

// UTF-8, LF line endings, header row first; absent cells are empty fields.
// Provenance is a JSON-only concept and is not written to CSV.
inline std::string to_csv(const ReportTable& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += detail::csv_escape(table.columns[c]);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += detail::cell_to_csv(row[c]);
    }
    out += '\n';
  }
  return out;
}

inline std::string to_json(const ReportTable& table) {
  std::string out = "{\n  \"columns\": [";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ", ";
    out += "\"" + detail::json_escape(table.columns[c]) + "\"";
  }
  out += "],\n  \"rows\": [";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out += r ? ",\n    [" : "\n    [";
    for (std::size_t c = 0; c < table.rows[r].size(); ++c) {
      if (c) out += ", ";
      out += detail::cell_to_json(table.rows[r][c]);
    }
    out += "]";
  }
  out += table.rows.empty() ? "],\n" : "\n  ],\n";
  out += "  \"provenance\": {";
  for (std::size_t p = 0; p < table.provenance.size(); ++p) {
    if (p) out += ",";
    out += "\n    \"" + detail::json_escape(table.provenance[p].first) +
           "\": \"" + detail::json_escape(table.provenance[p].second) + "\"";
  }
  out += table.provenance.empty() ? "}\n}\n" : "\n  }\n}\n";
  return out;
}

// Render and write: to stdout when out_path is empty, else to the file
// (binary mode so line endings survive untouched on every platform).
inline void emit(const ReportTable& table, const std::string& format,
                 const std::string& out_path) {
  const std::string body = format == "json" ? to_json(table) : to_csv(table);
  if (out_path.empty()) {
    std::cout << body;
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to stdout");
    return;
  }
  std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open output file: " + out_path);
  file << body;
  file.flush();
  if (!file) throw IoError("failed writing output file: " + out_path);
}

}  // namespace discframe

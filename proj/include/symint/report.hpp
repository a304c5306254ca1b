#pragma once

// Flat tabular reports and their CSV / JSON renderings.

#include "symint/integrals.hpp"
#include "symint/rational.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace symint {

enum class ReportFormat { csv, json };

inline ReportFormat parse_format(const std::string& s) {
  if (s == "csv") return ReportFormat::csv;
  if (s == "json") return ReportFormat::json;
  throw std::invalid_argument("unknown report format '" + s + "'");
}

/// Column-ordered table of already-rendered cells.
struct Report {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row) {
    if (row.size() != columns.size()) throw std::logic_error("report row width mismatch");
    rows.push_back(std::move(row));
  }

  bool operator==(const Report&) const = default;
};

namespace detail {

inline std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::vector<std::string> csv_parse_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else if (c != '\r') {
      cell += c;
    }
  }
  cells.push_back(std::move(cell));
  return cells;
}

}  // namespace detail

inline std::string to_csv(const Report& r) {
  std::ostringstream out;
  for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << detail::csv_escape(r.columns[i]);
  out << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << detail::csv_escape(row[i]);
    out << '\n';
  }
  return out.str();
}

/// Array of objects; every cell stays a string so exact values survive.
inline nlohmann::ordered_json to_json_value(const Report& r) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[r.columns[i]] = row[i];
    arr.push_back(std::move(obj));
  }
  return arr;
}

inline std::string to_json(const Report& r) { return to_json_value(r).dump(2) + "\n"; }

inline Report report_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Report r;
  if (!std::getline(in, line)) throw std::runtime_error("report CSV: empty input");
  r.columns = detail::csv_parse_line(line);
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto cells = detail::csv_parse_line(line);
    if (cells.size() != r.columns.size()) throw std::runtime_error("report CSV: ragged row '" + line + "'");
    r.rows.push_back(std::move(cells));
  }
  return r;
}

inline Report report_from_json(const std::string& text) {
  const auto arr = nlohmann::ordered_json::parse(text);
  if (!arr.is_array()) throw std::runtime_error("report JSON: expected an array of objects");
  Report r;
  for (const auto& obj : arr) {
    if (!obj.is_object()) throw std::runtime_error("report JSON: expected objects");
    if (r.columns.empty()) {
      for (const auto& [k, v] : obj.items()) r.columns.push_back(k);
    }
    std::vector<std::string> row;
    for (const auto& c : r.columns) {
      if (!obj.contains(c)) throw std::runtime_error("report JSON: missing field '" + c + "'");
      const auto& v = obj.at(c);
      row.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    }
    r.rows.push_back(std::move(row));
  }
  return r;
}

inline std::string render(const Report& r, ReportFormat f) {
  return f == ReportFormat::csv ? to_csv(r) : to_json(r);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

/// Loads a CSV or JSON report (detected from content) and renders it in `format`.
inline std::string render_report(const std::string& path, ReportFormat format) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool is_json = first != std::string::npos && (text[first] == '[' || text[first] == '{');
  return render(is_json ? report_from_json(text) : report_from_csv(text), format);
}

// ---------------------------------------------------------------------------
// IntegralReport

inline nlohmann::ordered_json to_json_value(const IntegralReport& r) {
  nlohmann::ordered_json j;
  j["value"] = to_string(r.value);
  j["exact"] = r.exact();
  j["mode"] = to_string(r.mode);
  j["N"] = r.N;
  j["h"] = r.h;
  j["f_label"] = r.f_label;
  j["f1_label"] = r.f1_label;
  nlohmann::ordered_json terms = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.terms) terms[k] = to_string(v);
  j["terms"] = std::move(terms);
  return j;
}

inline std::string to_json(const IntegralReport& r) { return to_json_value(r).dump(2) + "\n"; }

/// One-row table mirroring the JSON object; terms become "term:<name>" columns.
inline Report to_table(const IntegralReport& r) {
  Report t;
  t.columns = {"value", "exact", "mode", "N", "h", "f_label", "f1_label"};
  std::vector<std::string> row = {to_string(r.value), r.exact() ? "true" : "false", to_string(r.mode),
                                  std::to_string(r.N), std::to_string(r.h), r.f_label, r.f1_label};
  for (const auto& [k, v] : r.terms) {
    t.columns.push_back("term:" + k);
    row.push_back(to_string(v));
  }
  t.add_row(std::move(row));
  return t;
}

inline std::string to_csv(const IntegralReport& r) { return to_csv(to_table(r)); }

}  // namespace symint

#pragma once

// Text formats used by the command-line tool: CSV tables and flat JSON
// objects, always printed with 17 significant digits and '\n' line ends.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "signpres/error.hpp"
#include "signpres/grid.hpp"

namespace signpres::io {

inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const std::vector<std::string>& header) : os_(os), columns_(header.size()) {
    write_fields(header);
  }

  void row(const std::vector<double>& values) {
    std::vector<std::string> fields;
    fields.reserve(values.size());
    for (double v : values) fields.push_back(format_number(v));
    write_fields(fields);
  }

  void row(const std::vector<std::string>& fields) { write_fields(fields); }

 private:
  void write_fields(const std::vector<std::string>& fields) {
    require(fields.size() == columns_, ErrorKind::InvalidInput, "CSV row width mismatch");
    for (std::size_t i = 0; i < fields.size(); ++i) os_ << (i ? "," : "") << fields[i];
    os_ << '\n';
  }

  std::ostream& os_;
  std::size_t columns_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::optional<std::size_t> column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    return std::nullopt;
  }
};

inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  return out;
}

/// Numeric CSV with a header line; blank lines and lines starting with '#' are skipped.
inline CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    std::vector<std::string> fields = split_fields(line);
    if (t.header.empty()) {
      t.header = std::move(fields);
      continue;
    }
    require(fields.size() == t.header.size(), ErrorKind::InvalidInput,
            "CSV line " + std::to_string(lineno) + " has " + std::to_string(fields.size()) + " fields");
    std::vector<double> row;
    for (const std::string& f : fields) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(f, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      require(used == f.size() && !f.empty(), ErrorKind::InvalidInput,
              "CSV line " + std::to_string(lineno) + ": not a number '" + f + "'");
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  require(!t.header.empty(), ErrorKind::InvalidInput, "CSV input is empty");
  return t;
}

inline CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::InvalidInput, "cannot open '" + path + "'");
  return read_csv(in);
}

/// Samples `column` of a CSV with an x column onto g; x must match the nodes.
inline Profile profile_from_csv(const CsvTable& t, const Grid& g, std::string_view column) {
  const auto xc = t.column("x");
  const auto vc = t.column(column);
  require(xc && vc, ErrorKind::InvalidInput, "CSV needs columns x and " + std::string(column));
  require(t.rows.size() == g.size(), ErrorKind::InvalidInput,
          "CSV has " + std::to_string(t.rows.size()) + " rows, grid has " + std::to_string(g.size()) + " nodes");
  std::vector<double> values(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    require(std::abs(t.rows[j][*xc] - g.node(j)) <= 1e-9, ErrorKind::InvalidInput,
            "CSV x does not match grid node " + std::to_string(j));
    values[j] = t.rows[j][*vc];
  }
  return Profile(g, std::move(values));
}

/// "const:<value>" or a path to a CSV with columns x and `column`.
inline Profile load_profile(const std::string& source, const Grid& g, std::string_view column) {
  constexpr std::string_view prefix = "const:";
  if (source.rfind(prefix, 0) == 0) {
    const std::string num = source.substr(prefix.size());
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(num, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    require(used == num.size() && !num.empty() && std::isfinite(v), ErrorKind::InvalidInput,
            "bad constant in '" + source + "'");
    return Profile::constant(g, v);
  }
  return profile_from_csv(read_csv_file(source), g, column);
}

/// Flat JSON object with insertion-ordered keys. Nested objects are inserted
/// pre-rendered.
class JsonObject {
 public:
  JsonObject& add(std::string key, double v) { return raw(std::move(key), number(v)); }
  JsonObject& add(std::string key, int v) { return raw(std::move(key), std::to_string(v)); }
  JsonObject& add(std::string key, std::size_t v) { return raw(std::move(key), std::to_string(v)); }
  JsonObject& add(std::string key, bool v) { return raw(std::move(key), v ? "true" : "false"); }
  JsonObject& add(std::string key, const char* v) { return raw(std::move(key), quote(v)); }
  JsonObject& add(std::string key, std::string_view v) { return raw(std::move(key), quote(v)); }
  JsonObject& add(std::string key, const JsonObject& v) { return raw(std::move(key), v.str()); }
  JsonObject& add(std::string key, const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + number(v[i]);
    return raw(std::move(key), s + "]");
  }
  JsonObject& add_null(std::string key) { return raw(std::move(key), "null"); }
  template <class T>
  JsonObject& add(std::string key, const std::optional<T>& v) {
    return v ? add(std::move(key), *v) : add_null(std::move(key));
  }

  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < fields_.size(); ++i)
      s += (i ? ", " : "") + quote(fields_[i].first) + ": " + fields_[i].second;
    return s + "}";
  }

 private:
  // JSON has no inf/nan; they become null.
  static std::string number(double v) { return std::isfinite(v) ? format_number(v) : "null"; }

  static std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
      switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        default: out += c;
      }
    }
    return out + "\"";
  }

  JsonObject& raw(std::string key, std::string value) {
    fields_.emplace_back(std::move(key), std::move(value));
    return *this;
  }

  std::vector<std::pair<std::string, std::string>> fields_;
};

}  // namespace signpres::io

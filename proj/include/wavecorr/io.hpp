#pragma once

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "wavecorr/errors.hpp"
#include "wavecorr/matrix.hpp"

namespace wavecorr::io {

struct IoError : Error {
  using Error::Error;
};

/// 17 significant digits: enough to round-trip any double exactly.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace detail {

inline bool parse_double(std::string_view field, double& out) {
  std::string trimmed;
  trimmed.reserve(field.size());
  for (char c : field)
    if (!std::isspace(static_cast<unsigned char>(c))) trimmed.push_back(c);
  if (trimmed.empty()) return false;
  char* end = nullptr;
  out = std::strtod(trimmed.c_str(), &end);
  return end == trimmed.c_str() + trimmed.size();
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace detail

/// Single-column CSV series. A non-numeric first line is treated as a
/// header; blank lines are skipped.
inline std::vector<double> read_series_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open series file: " + path.string());
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto fields = detail::split_csv_line(line);
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != 1)
      throw IoError(path.string() + ":" + std::to_string(lineno) +
                    ": expected a single column, got " + std::to_string(fields.size()));
    double v = 0.0;
    if (!detail::parse_double(fields[0], v)) {
      if (values.empty() && lineno == 1) continue;  // header
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": not a number: '" +
                    fields[0] + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) throw IoError(path.string() + ": no data rows");
  return values;
}

/// Plain CSV matrix (comma-separated rows), no header.
inline Matrix read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open matrix file: " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto fields = detail::split_csv_line(line);
    if (fields.size() == 1 && fields[0].empty()) continue;
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) {
      double v = 0.0;
      if (!detail::parse_double(f, v))
        throw IoError(path.string() + ":" + std::to_string(lineno) + ": not a number: '" + f +
                      "'");
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": ragged row (" +
                    std::to_string(row.size()) + " vs " + std::to_string(rows.front().size()) +
                    " columns)");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError(path.string() + ": no data rows");
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

/// Writes via a temp file in the same directory plus rename, so readers
/// never observe a half-written file.
inline void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  const fs::path tmp = dir / (path.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + tmp.string());
    out << content;
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("rename failed for " + path.string() + ": " + ec.message());
}

inline std::string series_to_csv(const std::vector<double>& v) {
  std::string out;
  for (double x : v) {
    out += fmt17(x);
    out += '\n';
  }
  return out;
}

inline std::string matrix_to_csv(const Matrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += fmt17(m(i, j));
    }
    out += '\n';
  }
  return out;
}

/// Deterministic JSON emitter. All numbers are serialized with 17
/// significant digits and object keys keep insertion order, so output
/// bytes are stable for identical inputs.
class JsonValue {
 public:
  using Object = std::vector<std::pair<std::string, JsonValue>>;
  using Array = std::vector<JsonValue>;

  JsonValue() : value_(nullptr) {}
  JsonValue(std::nullptr_t) : value_(nullptr) {}
  JsonValue(bool b) : value_(b) {}
  JsonValue(double d) : value_(d) {}
  JsonValue(int i) : value_(static_cast<std::int64_t>(i)) {}
  JsonValue(std::int64_t i) : value_(i) {}
  JsonValue(std::size_t u) : value_(static_cast<std::int64_t>(u)) {}
  JsonValue(const char* s) : value_(std::string(s)) {}
  JsonValue(std::string s) : value_(std::move(s)) {}
  JsonValue(Array a) : value_(std::move(a)) {}
  JsonValue(Object o) : value_(std::move(o)) {}

  static JsonValue object() { return JsonValue(Object{}); }
  static JsonValue array() { return JsonValue(Array{}); }

  JsonValue& set(std::string key, JsonValue v) {
    std::get<Object>(value_).emplace_back(std::move(key), std::move(v));
    return *this;
  }
  JsonValue& push(JsonValue v) {
    std::get<Array>(value_).push_back(std::move(v));
    return *this;
  }

  void dump(std::string& out, int indent, int depth) const {
    const std::string pad(static_cast<std::size_t>(indent * depth), ' ');
    const std::string pad_in(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    if (std::holds_alternative<std::nullptr_t>(value_)) {
      out += "null";
    } else if (std::holds_alternative<bool>(value_)) {
      out += std::get<bool>(value_) ? "true" : "false";
    } else if (std::holds_alternative<std::int64_t>(value_)) {
      out += std::to_string(std::get<std::int64_t>(value_));
    } else if (std::holds_alternative<double>(value_)) {
      out += fmt17(std::get<double>(value_));
    } else if (std::holds_alternative<std::string>(value_)) {
      dump_string(out, std::get<std::string>(value_));
    } else if (std::holds_alternative<Array>(value_)) {
      const auto& arr = std::get<Array>(value_);
      if (arr.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < arr.size(); ++i) {
        out += pad_in;
        arr[i].dump(out, indent, depth + 1);
        if (i + 1 < arr.size()) out += ',';
        out += '\n';
      }
      out += pad + "]";
    } else {
      const auto& obj = std::get<Object>(value_);
      if (obj.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      for (std::size_t i = 0; i < obj.size(); ++i) {
        out += pad_in;
        dump_string(out, obj[i].first);
        out += ": ";
        obj[i].second.dump(out, indent, depth + 1);
        if (i + 1 < obj.size()) out += ',';
        out += '\n';
      }
      out += pad + "}";
    }
  }

  std::string dump(int indent = 2) const {
    std::string out;
    dump(out, indent, 0);
    out += '\n';
    return out;
  }

 private:
  static void dump_string(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
      switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
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
    out += '"';
  }

  std::variant<std::nullptr_t, bool, std::int64_t, double, std::string, Array, Object> value_;
};

}  // namespace wavecorr::io

#pragma once

// Helpers for the plain-main test binaries that drive the CLI: process
// spawning with captured output, file utilities, and a small validator
// covering the JSON Schema subset used by the shipped schemas.

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace clitest {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << content;
}

/// Runs `binary args...` with stdout/stderr captured to files in `dir`.
inline RunResult run(const fs::path& binary, const std::vector<std::string>& args,
                     const fs::path& dir) {
  const fs::path out_path = dir / "stdout.txt";
  const fs::path err_path = dir / "stderr.txt";
  std::string cmd = "'" + binary.string() + "'";
  for (const auto& a : args) cmd += " '" + a + "'";
  cmd += " > '" + out_path.string() + "' 2> '" + err_path.string() + "'";
  const int raw = std::system(cmd.c_str());
  RunResult res;
  res.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  res.out = read_file(out_path);
  res.err = read_file(err_path);
  return res;
}

// ------------------------------------------------------------- validator

inline bool type_matches(const std::string& t, const json& v) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "number") return v.is_number();
  if (t == "integer") return v.is_number_integer() || v.is_number_unsigned();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  return false;
}

inline bool validate_node(const json& schema, const json& value, const json& root,
                          std::string& err, const std::string& path) {
  if (schema.contains("$ref")) {
    const std::string ref = schema["$ref"];
    const std::string prefix = "#/$defs/";
    if (ref.rfind(prefix, 0) != 0) {
      err = path + ": unsupported $ref " + ref;
      return false;
    }
    return validate_node(root["$defs"][ref.substr(prefix.size())], value, root, err, path);
  }
  if (schema.contains("oneOf")) {
    for (const auto& sub : schema["oneOf"]) {
      std::string ignored;
      if (validate_node(sub, value, root, ignored, path)) return true;
    }
    err = path + ": matched no alternative of oneOf";
    return false;
  }
  if (schema.contains("enum")) {
    for (const auto& option : schema["enum"])
      if (option == value) return true;
    err = path + ": value " + value.dump() + " not in enum";
    return false;
  }
  if (schema.contains("type")) {
    const json& t = schema["type"];
    bool ok = false;
    if (t.is_string()) {
      ok = type_matches(t.get<std::string>(), value);
    } else {
      for (const auto& option : t)
        if (type_matches(option.get<std::string>(), value)) ok = true;
    }
    if (!ok) {
      err = path + ": type mismatch, got " + value.dump().substr(0, 40);
      return false;
    }
  }
  if (schema.contains("required")) {
    for (const auto& key : schema["required"]) {
      if (!value.contains(key.get<std::string>())) {
        err = path + ": missing required key " + key.get<std::string>();
        return false;
      }
    }
  }
  if (schema.contains("properties") && value.is_object()) {
    for (const auto& [key, sub] : schema["properties"].items()) {
      if (!value.contains(key)) continue;
      if (!validate_node(sub, value.at(key), root, err, path + "/" + key)) return false;
    }
  }
  if (schema.contains("items") && value.is_array()) {
    std::size_t i = 0;
    for (const auto& item : value) {
      if (!validate_node(schema["items"], item, root, err,
                         path + "[" + std::to_string(i) + "]"))
        return false;
      ++i;
    }
  }
  return true;
}

inline bool validate_against_schema(const fs::path& schema_path, const json& value,
                                    std::string& err) {
  const json schema = json::parse(read_file(schema_path));
  return validate_node(schema, value, schema, err, "$");
}

// ------------------------------------------------------------ test hooks

inline int g_failures = 0;

inline void check(bool ok, const std::string& what) {
  if (ok) {
    std::printf("ok   %s\n", what.c_str());
  } else {
    std::printf("FAIL %s\n", what.c_str());
    ++g_failures;
  }
}

template <typename T, typename U>
void check_eq(const T& got, const U& want, const std::string& what) {
  if (got == want) {
    std::printf("ok   %s\n", what.c_str());
  } else {
    std::ostringstream os;
    os << "FAIL " << what << " (got " << got << ", want " << want << ")";
    std::printf("%s\n", os.str().c_str());
    ++g_failures;
  }
}

}  // namespace clitest

#pragma once

// Line-delimited JSON plumbing shared by the file readers and writers.

#include <initializer_list>
#include <istream>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "synlint/error.hpp"
#include "synlint/ingest.hpp"

namespace synlint::detail {

using json = nlohmann::json;

// Schema problem inside one record; read_lines attaches the line number.
struct FieldError {
  std::string field;
  std::string message;
};

inline const json& require(const json& obj, std::string_view key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw FieldError{std::string(key), "missing field \"" + std::string(key) + "\""};
  return *it;
}

inline std::string get_string(const json& obj, std::string_view key) {
  const json& v = require(obj, key);
  if (!v.is_string()) throw FieldError{std::string(key), "field \"" + std::string(key) + "\" must be a string"};
  return v.get<std::string>();
}

inline long long get_int(const json& obj, std::string_view key) {
  const json& v = require(obj, key);
  if (!v.is_number_integer())
    throw FieldError{std::string(key), "field \"" + std::string(key) + "\" must be an integer"};
  return v.get<long long>();
}

inline const json& get_object(const json& obj, std::string_view key) {
  const json& v = require(obj, key);
  if (!v.is_object()) throw FieldError{std::string(key), "field \"" + std::string(key) + "\" must be an object"};
  return v;
}

inline const json& get_array(const json& obj, std::string_view key) {
  const json& v = require(obj, key);
  if (!v.is_array()) throw FieldError{std::string(key), "field \"" + std::string(key) + "\" must be an array"};
  return v;
}

inline void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (auto key : allowed) known = known || item.key() == key;
    if (!known) throw FieldError{item.key(), "unknown field \"" + item.key() + "\""};
  }
}

// Prefixes the field path of errors raised while reading a nested object.
template <class F>
auto nested(std::string_view prefix, F&& f) {
  try {
    return f();
  } catch (FieldError& e) {
    e.field = std::string(prefix) + "." + e.field;
    throw;
  }
}

inline std::string dump(const json& j) {
  return j.dump(-1, ' ', false, json::error_handler_t::strict);
}

template <class T, class F>
ParseResult<T> read_lines(std::istream& in, ParseMode mode, F&& parse_one) {
  ParseResult<T> result;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    Diagnostic diag;
    diag.line = number;
    try {
      json j = json::parse(line);
      if (!j.is_object()) throw FieldError{"", "record must be a JSON object"};
      result.records.push_back(parse_one(j, number));
      continue;
    } catch (const json::parse_error& e) {
      diag.code = ErrorCode::SyntaxError;
      diag.message = e.what();
    } catch (const FieldError& e) {
      diag.code = ErrorCode::SchemaError;
      diag.field = e.field;
      diag.message = e.message;
    } catch (const json::exception& e) {
      diag.code = ErrorCode::SchemaError;
      diag.message = e.what();
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      diag.code = ErrorCode::SchemaError;
      diag.message = e.what();
    }
    if (mode == ParseMode::Strict) throw ParseError(diag.code, diag.line, diag.field, diag.message);
    result.diagnostics.push_back(std::move(diag));
  }
  return result;
}

}  // namespace synlint::detail

#pragma once

// Private helpers shared by the box and wiring readers.

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rgb/box_io.hpp"
#include "rgb/strategy_table.hpp"

namespace rgb::detail {

inline nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw FormatError("line " + std::to_string(line), "invalid JSON");
  }
}

inline int integer(const nlohmann::json& v, const std::string& path) {
  if (!v.is_number_integer()) throw FormatError(path, "expected an integer");
  return v.get<int>();
}

inline std::vector<int> int_array(const nlohmann::json& doc, const std::string& key, std::size_t n) {
  if (!doc.contains(key) || !doc[key].is_array() || doc[key].size() != n) {
    throw FormatError(key, "expected an array of " + std::to_string(n) + " integers");
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(integer(doc[key][i], key + "[" + std::to_string(i) + "]"));
  return out;
}

inline int symbol(const nlohmann::json& record, const std::string& path, const char* key, Alphabet alphabet) {
  const std::string field = path + "." + key;
  if (!record.contains(key)) throw FormatError(field, "missing");
  const int v = integer(record[key], field);
  if (!alphabet.contains(v)) {
    throw FormatError(field, std::to_string(v) + " outside alphabet of size " + std::to_string(alphabet.size()));
  }
  return v;
}

}  // namespace rgb::detail

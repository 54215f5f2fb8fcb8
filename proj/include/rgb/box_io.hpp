#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "rgb/strategy_table.hpp"

namespace rgb {

// Malformed box or wiring document. `where` is "line N" for syntax errors
// or a field path such as "table[3].p" for semantic ones.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::string where, const std::string& message)
      : std::runtime_error(where + ": " + message), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// Box file: a JSON document
//   {"alphabets": [|A|,|B|,|X|,|Y|],
//    "table": [{"a":0,"b":0,"x":1,"y":2,"p":"1/2"}, ...]}
// Omitted tuples are zero. Output is canonical: records sorted by
// (a,b,x,y), zero entries omitted, one record per line.
std::string write_box(const StrategyTable& table);

// Same layout with p printed as a decimal with 17 significant digits.
std::string write_real_box(const RealTable& table);

// Exact reader: every p must be "num/den" (or an integer).
StrategyTable read_box(std::string_view text);

// Accepts rational strings, decimal strings or JSON numbers for p.
RealTable read_real_box(std::string_view text);

std::string format_decimal(double value);

}  // namespace rgb

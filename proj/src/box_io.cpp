#include "rgb/box_io.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "json_support.hpp"

namespace rgb {

using nlohmann::json;

std::string format_decimal(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

template <class T, class Format>
std::string write_table(const Table<T>& t, Format&& format) {
  const BoxShape& sh = t.shape();
  std::ostringstream os;
  os << "{\n  \"alphabets\": [" << sh.in_a.size() << ", " << sh.in_b.size() << ", " << sh.out_x.size() << ", "
     << sh.out_y.size() << "],\n  \"table\": [";
  bool first = true;
  for (int a = 0; a < sh.in_a.size(); ++a)
    for (int b = 0; b < sh.in_b.size(); ++b)
      for (int x = 0; x < sh.out_x.size(); ++x)
        for (int y = 0; y < sh.out_y.size(); ++y) {
          const T& p = t(a, b, x, y);
          if (p == T(0)) continue;
          os << (first ? "\n" : ",\n") << "    {\"a\": " << a << ", \"b\": " << b << ", \"x\": " << x
             << ", \"y\": " << y << ", \"p\": \"" << format(p) << "\"}";
          first = false;
        }
  os << (first ? "]\n}\n" : "\n  ]\n}\n");
  return os.str();
}

template <class T, class ParseP>
Table<T> read_table(std::string_view text, ParseP&& parse_p) {
  const json doc = detail::parse_json(text);
  if (!doc.is_object()) throw FormatError("document", "expected a JSON object");

  const auto dims = detail::int_array(doc, "alphabets", 4);
  for (std::size_t i = 0; i < 4; ++i)
    if (dims[i] < 1) throw FormatError("alphabets[" + std::to_string(i) + "]", "alphabet size must be >= 1");
  const BoxShape shape = BoxShape::of(dims[0], dims[1], dims[2], dims[3]);

  if (!doc.contains("table") || !doc["table"].is_array()) throw FormatError("table", "missing or not an array");
  std::vector<T> entries(shape.num_entries(), T(0));
  std::set<std::size_t> seen;
  const json& records = doc["table"];
  for (std::size_t i = 0; i < records.size(); ++i) {
    const std::string path = "table[" + std::to_string(i) + "]";
    const json& r = records[i];
    if (!r.is_object()) throw FormatError(path, "expected an object");
    const int a = detail::symbol(r, path, "a", shape.in_a);
    const int b = detail::symbol(r, path, "b", shape.in_b);
    const int x = detail::symbol(r, path, "x", shape.out_x);
    const int y = detail::symbol(r, path, "y", shape.out_y);
    if (!r.contains("p")) throw FormatError(path + ".p", "missing");
    const std::size_t idx = shape.index(a, b, x, y);
    if (!seen.insert(idx).second) throw FormatError(path, "duplicate tuple");
    entries[idx] = parse_p(r["p"], path + ".p");
    const T tol = Tolerance<T>::table();
    if (entries[idx] < T(0) - tol || entries[idx] > T(1) + tol) throw FormatError(path + ".p", "outside [0,1]");
  }
  try {
    return Table<T>(shape, std::move(entries));
  } catch (const std::invalid_argument& e) {
    throw FormatError("table", e.what());
  }
}

Rat parse_rational_field(const json& p, const std::string& path) {
  if (!p.is_string()) throw FormatError(path, "expected a string \"num/den\"");
  try {
    return Rat::parse(p.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw FormatError(path, e.what());
  }
}

double parse_real_field(const json& p, const std::string& path) {
  if (p.is_number()) return p.get<double>();
  if (!p.is_string()) throw FormatError(path, "expected a number or string");
  const std::string s = p.get<std::string>();
  if (s.find('/') != std::string::npos) return parse_rational_field(p, path).to_double();
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw FormatError(path, "not a decimal: '" + s + "'");
  }
}

}  // namespace

std::string write_box(const StrategyTable& table) {
  return write_table(table, [](const Rat& p) { return p.str(); });
}

std::string write_real_box(const RealTable& table) {
  return write_table(table, [](double p) { return format_decimal(p); });
}

StrategyTable read_box(std::string_view text) { return read_table<Rat>(text, parse_rational_field); }

RealTable read_real_box(std::string_view text) { return read_table<double>(text, parse_real_field); }

}  // namespace rgb

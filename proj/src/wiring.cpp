#include "rgb/wiring.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "json_support.hpp"

namespace rgb {

namespace {

// Calls fn(own, outputs, r) for every domain point in table order.
template <class F>
void for_each_domain_point(int own_size, int k, int radix, int randomness, F&& fn) {
  std::vector<int> outs(static_cast<std::size_t>(k), 0);
  for (int own = 0; own < own_size; ++own) {
    std::fill(outs.begin(), outs.end(), 0);
    for (;;) {
      for (int r = 0; r < randomness; ++r) fn(own, std::span<const int>(outs), r);
      std::size_t i = outs.size();
      while (i > 0 && ++outs[i - 1] == radix) outs[--i] = 0;
      if (i == 0) break;
    }
  }
}

void check_table(const std::vector<int>& table, std::size_t size, Alphabet range, const std::string& what) {
  if (table.size() != size) {
    throw std::invalid_argument(what + ": expected " + std::to_string(size) + " entries, got " +
                                std::to_string(table.size()));
  }
  for (int v : table)
    if (!range.contains(v)) throw std::invalid_argument(what + ": value " + std::to_string(v) + " out of range");
}

}  // namespace

std::size_t WiringProtocol::table_size(int own_size, int k, int radix, int randomness) {
  std::size_t n = static_cast<std::size_t>(own_size) * randomness;
  for (int i = 0; i < k; ++i) n *= static_cast<std::size_t>(radix);
  return n;
}

std::size_t WiringProtocol::table_index(int own, std::span<const int> outputs, int radix, int randomness, int r) {
  std::size_t idx = static_cast<std::size_t>(own);
  for (int o : outputs) idx = idx * radix + o;
  return idx * randomness + r;
}

WiringProtocol::WiringProtocol(BoxShape outer, BoxShape inner, int calls, int randomness,
                               std::vector<std::vector<int>> alice_inputs, std::vector<std::vector<int>> bob_inputs,
                               std::vector<int> alice_output, std::vector<int> bob_output)
    : outer_(outer),
      inner_(inner),
      calls_(calls),
      randomness_(randomness),
      alice_in_(std::move(alice_inputs)),
      bob_in_(std::move(bob_inputs)),
      alice_out_(std::move(alice_output)),
      bob_out_(std::move(bob_output)) {
  if (calls_ < 0) throw std::invalid_argument("wiring: negative call count");
  if (randomness_ < 1) throw std::invalid_argument("wiring: randomness alphabet must be >= 1");
  if (alice_in_.size() != static_cast<std::size_t>(calls_) || bob_in_.size() != static_cast<std::size_t>(calls_)) {
    throw std::invalid_argument("wiring: need one input map per call");
  }
  const int rx = inner_.out_x.size();
  const int ry = inner_.out_y.size();
  for (int k = 0; k < calls_; ++k) {
    check_table(alice_in_[k], table_size(outer_.in_a.size(), k, rx, randomness_), inner_.in_a,
                "alice input map " + std::to_string(k));
    check_table(bob_in_[k], table_size(outer_.in_b.size(), k, ry, randomness_), inner_.in_b,
                "bob input map " + std::to_string(k));
  }
  check_table(alice_out_, table_size(outer_.in_a.size(), calls_, rx, randomness_), outer_.out_x, "alice output map");
  check_table(bob_out_, table_size(outer_.in_b.size(), calls_, ry, randomness_), outer_.out_y, "bob output map");
}

WiringProtocol WiringProtocol::from_functions(BoxShape outer, BoxShape inner, int calls, int randomness,
                                              const InputMap& alice_in, const InputMap& bob_in,
                                              const OutputMap& alice_out, const OutputMap& bob_out) {
  if (calls < 0 || randomness < 1) throw std::invalid_argument("wiring: bad call count or randomness");
  std::vector<std::vector<int>> ai(static_cast<std::size_t>(calls)), bi(static_cast<std::size_t>(calls));
  for (int k = 0; k < calls; ++k) {
    for_each_domain_point(outer.in_a.size(), k, inner.out_x.size(), randomness,
                          [&](int own, std::span<const int> o, int r) { ai[k].push_back(alice_in(k, own, o, r)); });
    for_each_domain_point(outer.in_b.size(), k, inner.out_y.size(), randomness,
                          [&](int own, std::span<const int> o, int r) { bi[k].push_back(bob_in(k, own, o, r)); });
  }
  std::vector<int> ao, bo;
  for_each_domain_point(outer.in_a.size(), calls, inner.out_x.size(), randomness,
                        [&](int own, std::span<const int> o, int r) { ao.push_back(alice_out(own, o, r)); });
  for_each_domain_point(outer.in_b.size(), calls, inner.out_y.size(), randomness,
                        [&](int own, std::span<const int> o, int r) { bo.push_back(bob_out(own, o, r)); });
  return WiringProtocol(outer, inner, calls, randomness, std::move(ai), std::move(bi), std::move(ao), std::move(bo));
}

int WiringProtocol::alice_input(int call, int a, std::span<const int> prior, int r) const {
  return alice_in_[call][table_index(a, prior, inner_.out_x.size(), randomness_, r)];
}

int WiringProtocol::bob_input(int call, int b, std::span<const int> prior, int r) const {
  return bob_in_[call][table_index(b, prior, inner_.out_y.size(), randomness_, r)];
}

int WiringProtocol::alice_output(int a, std::span<const int> outputs, int r) const {
  return alice_out_[table_index(a, outputs, inner_.out_x.size(), randomness_, r)];
}

int WiringProtocol::bob_output(int b, std::span<const int> outputs, int r) const {
  return bob_out_[table_index(b, outputs, inner_.out_y.size(), randomness_, r)];
}

// ---------------------------------------------------------------------------

WiringProtocol pr_from_rgrb() {
  // Inner inputs a' = a, b' = 2b. The decoding 2(x'-a'+1) mod 3 is 1 exactly
  // when x' = a'+1; on its own it yields x XOR y = (NOT a) AND (NOT b), so
  // Alice also XORs in NOT a and Bob XORs in b. Inner outputs equal to the
  // inner input never occur and decode to 0.
  auto decode = [](int out, int in) {
    const int v = mod3(2 * (out - in + 1));
    return v == 1 ? 1 : 0;
  };
  return WiringProtocol::from_functions(
      BoxShape::uniform(2), BoxShape::uniform(3), 1, 1,
      [](int, int a, std::span<const int>, int) { return a; },
      [](int, int b, std::span<const int>, int) { return mod3(2 * b); },
      [&](int a, std::span<const int> o, int) { return decode(o[0], a) ^ a ^ 1; },
      [&](int b, std::span<const int> o, int) { return decode(o[0], mod3(2 * b)) ^ b; });
}

WiringProtocol parity_wiring(const ParityTables& t) {
  for (const auto* tab : {&t.alpha1, &t.beta1, &t.alpha2, &t.beta2, &t.c_alice, &t.c_bob})
    for (int v : *tab)
      if (v != 0 && v != 1) throw std::invalid_argument("parity_wiring: tables must hold bits");
  auto step = [](int own, int e) { return mod3(own + (e == 0 ? 1 : 2)); };  // own + 2^e
  return WiringProtocol::from_functions(
      BoxShape::uniform(3), BoxShape::uniform(2), 2, 1,
      [t](int call, int a, std::span<const int>, int) { return call == 0 ? t.alpha1[a] : t.alpha2[a]; },
      [t](int call, int b, std::span<const int>, int) { return call == 0 ? t.beta1[b] : t.beta2[b]; },
      [t, step](int a, std::span<const int> o, int) { return step(a, t.c_alice[a] ^ o[0] ^ o[1]); },
      [t, step](int b, std::span<const int> o, int) { return step(b, t.c_bob[b] ^ o[0] ^ o[1]); });
}

WiringProtocol rgrb_from_pr() {
  // x XOR y sums of the two calls give [a in {0,2}][b in {1,2}] XOR
  // [a in {1,2}][b in {0,2}] = [a != b]; Alice's constant 1 flips it to
  // [a = b], which is exactly when the two signs must differ.
  return parity_wiring({{1, 0, 1}, {0, 1, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}, {0, 0, 0}});
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

using nlohmann::json;

json shape_json(const BoxShape& s) { return json::array({s.in_a.size(), s.in_b.size(), s.out_x.size(), s.out_y.size()}); }

std::string tuples(const std::vector<int>& table, int own_size, int k, int radix, int randomness,
                   const std::string& indent) {
  std::ostringstream os;
  std::size_t i = 0;
  os << "[";
  for_each_domain_point(own_size, k, radix, randomness, [&](int own, std::span<const int> o, int r) {
    os << (i == 0 ? "\n" : ",\n") << indent << "  [" << own;
    for (int v : o) os << ", " << v;
    os << ", " << r << ", " << table[i] << "]";
    ++i;
  });
  os << "\n" << indent << "]";
  return os.str();
}

std::vector<int> read_tuples(const json& doc, const std::string& path, int own_size, int k, int radix,
                             int randomness) {
  if (!doc.is_array()) throw FormatError(path, "expected an array of tuples");
  const std::size_t size = WiringProtocol::table_size(own_size, k, radix, randomness);
  std::vector<int> table(size, -1);
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const json& t = doc[i];
    if (!t.is_array() || t.size() != static_cast<std::size_t>(k) + 3) {
      throw FormatError(p, "expected [own, " + std::to_string(k) + " outputs, r, value]");
    }
    std::vector<int> v;
    for (std::size_t j = 0; j < t.size(); ++j) v.push_back(detail::integer(t[j], p + "[" + std::to_string(j) + "]"));
    if (v[0] < 0 || v[0] >= own_size) throw FormatError(p + "[0]", "own input out of range");
    for (int j = 0; j < k; ++j)
      if (v[1 + j] < 0 || v[1 + j] >= radix) throw FormatError(p + "[" + std::to_string(1 + j) + "]", "output out of range");
    const int r = v[static_cast<std::size_t>(k) + 1];
    if (r < 0 || r >= randomness) throw FormatError(p + "[" + std::to_string(k + 1) + "]", "r out of range");
    const auto idx = WiringProtocol::table_index(v[0], std::span<const int>(v).subspan(1, k), radix, randomness, r);
    if (table[idx] != -1) throw FormatError(p, "duplicate domain point");
    table[idx] = v.back();
  }
  for (std::size_t i = 0; i < size; ++i)
    if (table[i] == -1) throw FormatError(path, "map is not total (" + std::to_string(doc.size()) + " of " +
                                                    std::to_string(size) + " domain points given)");
  return table;
}

}  // namespace

std::string write_wiring(const WiringProtocol& w) {
  const BoxShape& o = w.outer();
  const BoxShape& in = w.inner();
  std::ostringstream os;
  os << "{\n  \"outer\": " << shape_json(o).dump() << ",\n  \"inner\": " << shape_json(in).dump()
     << ",\n  \"calls\": " << w.calls() << ",\n  \"randomness\": " << w.randomness() << ",\n";
  auto maps = [&](const char* key, const std::vector<std::vector<int>>& tabs, int own, int radix) {
    os << "  \"" << key << "\": [";
    for (int k = 0; k < w.calls(); ++k) {
      os << (k == 0 ? "\n    " : ",\n    ") << tuples(tabs[k], own, k, radix, w.randomness(), "    ");
    }
    os << (w.calls() == 0 ? "],\n" : "\n  ],\n");
  };
  maps("alice_inputs", w.alice_input_tables(), o.in_a.size(), in.out_x.size());
  maps("bob_inputs", w.bob_input_tables(), o.in_b.size(), in.out_y.size());
  os << "  \"alice_output\": "
     << tuples(w.alice_output_table(), o.in_a.size(), w.calls(), in.out_x.size(), w.randomness(), "  ") << ",\n";
  os << "  \"bob_output\": "
     << tuples(w.bob_output_table(), o.in_b.size(), w.calls(), in.out_y.size(), w.randomness(), "  ") << "\n}\n";
  return os.str();
}

WiringProtocol read_wiring(std::string_view text) {
  const json doc = detail::parse_json(text);
  if (!doc.is_object()) throw FormatError("document", "expected a JSON object");
  const auto od = detail::int_array(doc, "outer", 4);
  const auto id = detail::int_array(doc, "inner", 4);
  for (std::size_t i = 0; i < 4; ++i) {
    if (od[i] < 1) throw FormatError("outer[" + std::to_string(i) + "]", "alphabet size must be >= 1");
    if (id[i] < 1) throw FormatError("inner[" + std::to_string(i) + "]", "alphabet size must be >= 1");
  }
  const BoxShape outer = BoxShape::of(od[0], od[1], od[2], od[3]);
  const BoxShape inner = BoxShape::of(id[0], id[1], id[2], id[3]);
  if (!doc.contains("calls")) throw FormatError("calls", "missing");
  if (!doc.contains("randomness")) throw FormatError("randomness", "missing");
  const int calls = detail::integer(doc["calls"], "calls");
  const int randomness = detail::integer(doc["randomness"], "randomness");
  if (calls < 0) throw FormatError("calls", "must be >= 0");
  if (randomness < 1) throw FormatError("randomness", "must be >= 1");

  auto input_maps = [&](const char* key, int own, int radix) {
    if (!doc.contains(key) || !doc[key].is_array() || doc[key].size() != static_cast<std::size_t>(calls)) {
      throw FormatError(key, "expected one tuple list per call");
    }
    std::vector<std::vector<int>> out;
    for (int k = 0; k < calls; ++k)
      out.push_back(read_tuples(doc[key][k], std::string(key) + "[" + std::to_string(k) + "]", own, k, radix, randomness));
    return out;
  };
  auto ai = input_maps("alice_inputs", outer.in_a.size(), inner.out_x.size());
  auto bi = input_maps("bob_inputs", outer.in_b.size(), inner.out_y.size());
  if (!doc.contains("alice_output")) throw FormatError("alice_output", "missing");
  if (!doc.contains("bob_output")) throw FormatError("bob_output", "missing");
  auto ao = read_tuples(doc["alice_output"], "alice_output", outer.in_a.size(), calls, inner.out_x.size(), randomness);
  auto bo = read_tuples(doc["bob_output"], "bob_output", outer.in_b.size(), calls, inner.out_y.size(), randomness);
  try {
    return WiringProtocol(outer, inner, calls, randomness, std::move(ai), std::move(bi), std::move(ao), std::move(bo));
  } catch (const std::invalid_argument& e) {
    throw FormatError("document", e.what());
  }
}

}  // namespace rgb

#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rgb/game.hpp"
#include "rgb/strategy_table.hpp"

namespace rgb {

// A local protocol that calls an inner box `calls` times in sequence with
// uniform shared randomness r in {0..randomness-1}. Each party picks the
// input of call k from its own outer input, its outputs of calls 0..k-1 and
// r, and finally maps (own input, all call outputs, r) to its outer output.
// All maps are stored as total lookup tables.
class WiringProtocol {
 public:
  using InputMap = std::function<int(int call, int own_input, std::span<const int> prior_outputs, int r)>;
  using OutputMap = std::function<int(int own_input, std::span<const int> outputs, int r)>;

  // Tables are indexed as documented on table_index(); alice_inputs and
  // bob_inputs hold one table per call.
  WiringProtocol(BoxShape outer, BoxShape inner, int calls, int randomness,
                 std::vector<std::vector<int>> alice_inputs, std::vector<std::vector<int>> bob_inputs,
                 std::vector<int> alice_output, std::vector<int> bob_output);

  static WiringProtocol from_functions(BoxShape outer, BoxShape inner, int calls, int randomness,
                                       const InputMap& alice_in, const InputMap& bob_in, const OutputMap& alice_out,
                                       const OutputMap& bob_out);

  const BoxShape& outer() const { return outer_; }
  const BoxShape& inner() const { return inner_; }
  int calls() const { return calls_; }
  int randomness() const { return randomness_; }

  int alice_input(int call, int a, std::span<const int> prior, int r) const;
  int bob_input(int call, int b, std::span<const int> prior, int r) const;
  int alice_output(int a, std::span<const int> outputs, int r) const;
  int bob_output(int b, std::span<const int> outputs, int r) const;

  const std::vector<std::vector<int>>& alice_input_tables() const { return alice_in_; }
  const std::vector<std::vector<int>>& bob_input_tables() const { return bob_in_; }
  const std::vector<int>& alice_output_table() const { return alice_out_; }
  const std::vector<int>& bob_output_table() const { return bob_out_; }

  // Row-major over (own input, outputs[0..k-1] base `radix`, r).
  static std::size_t table_index(int own, std::span<const int> outputs, int radix, int randomness, int r);
  static std::size_t table_size(int own_size, int k, int radix, int randomness);

  friend bool operator==(const WiringProtocol&, const WiringProtocol&) = default;

 private:
  BoxShape outer_;
  BoxShape inner_;
  int calls_;
  int randomness_;
  std::vector<std::vector<int>> alice_in_;
  std::vector<std::vector<int>> bob_in_;
  std::vector<int> alice_out_;
  std::vector<int> bob_out_;
};

namespace detail {

template <class T>
void evaluate_branch(const WiringProtocol& w, const Table<T>& base, int a, int b, int r, const T& weight,
                     std::vector<int>& xs, std::vector<int>& ys, std::vector<T>& row) {
  const auto k = static_cast<int>(xs.size());
  if (k == w.calls()) {
    const int x = w.alice_output(a, xs, r);
    const int y = w.bob_output(b, ys, r);
    row[static_cast<std::size_t>(x) * w.outer().out_y.size() + y] += weight;
    return;
  }
  const int ia = w.alice_input(k, a, xs, r);
  const int ib = w.bob_input(k, b, ys, r);
  const BoxShape& in = base.shape();
  for (int x = 0; x < in.out_x.size(); ++x) {
    for (int y = 0; y < in.out_y.size(); ++y) {
      const T& p = base(ia, ib, x, y);
      if (p == T(0)) continue;
      xs.push_back(x);
      ys.push_back(y);
      evaluate_branch(w, base, a, b, r, weight * p, xs, ys, row);
      xs.pop_back();
      ys.pop_back();
    }
  }
}

}  // namespace detail

// Exact composition: for every outer (a,b), sums over r and every branch of
// sequential base-box outcomes, each weighted by the product of the base
// box's conditionals.
template <class T>
Table<T> evaluate_wiring(const WiringProtocol& w, const Table<T>& base) {
  require_same_shape(w.inner(), base.shape(), "evaluate_wiring");
  const BoxShape& outer = w.outer();
  const std::size_t row_size = static_cast<std::size_t>(outer.out_x.size()) * outer.out_y.size();
  std::vector<T> entries;
  entries.reserve(outer.num_entries());
  const T r_weight = T(1) / T(w.randomness());
  std::vector<int> xs, ys;
  for (int a = 0; a < outer.in_a.size(); ++a) {
    for (int b = 0; b < outer.in_b.size(); ++b) {
      std::vector<T> row(row_size, T(0));
      for (int r = 0; r < w.randomness(); ++r) detail::evaluate_branch(w, base, a, b, r, r_weight, xs, ys, row);
      entries.insert(entries.end(), row.begin(), row.end());
    }
  }
  return Table<T>(outer, std::move(entries));
}

// One call to RGRB realizes PR.
WiringProtocol pr_from_rgrb();

// Two calls to PR realize RGRB.
WiringProtocol rgrb_from_pr();

// Lookup tables of the two-call parity construction: call 1 gets inputs
// (alpha1[a], beta1[b]), call 2 gets (alpha2[a], beta2[b]); the outputs are
// x = a + 2^(cA[a] ^ x1 ^ x2), y = b + 2^(cB[b] ^ y1 ^ y2) (mod 3).
struct ParityTables {
  std::array<int, 3> alpha1, beta1, alpha2, beta2, c_alice, c_bob;
};

WiringProtocol parity_wiring(const ParityTables& t);

// PR box whose parity is correct with probability p.
template <class T>
Table<T> noisy_pr(const T& p) {
  if (p < T(0) || p > T(1)) throw std::invalid_argument("noisy_pr: p outside [0,1]");
  const T half = T(1) / T(2);
  return Table<T>::from_function(BoxShape::uniform(2), [&](int a, int b, int x, int y) {
    return ((x ^ y) == (a & b)) ? p * half : (T(1) - p) * half;
  });
}

// Probability that rgrb_from_pr run on noisy_pr(p) lands inside RGRB's
// support, i.e. wins the stricter RGRB condition.
template <class T>
T noisy_composition_win(const T& p) {
  return win_probability(evaluate_wiring(rgrb_from_pr(), noisy_pr(p)), rgrb_condition_game());
}

// The same composite scored against the plain RGB game.
template <class T>
T noisy_composition_rgb_win(const T& p) {
  return win_probability(evaluate_wiring(rgrb_from_pr(), noisy_pr(p)), rgb_game());
}

// Wiring file: JSON with "outer"/"inner" alphabets, "calls", "randomness"
// and explicit tuple lists [own, out_0..out_{k-1}, r, value] for every map.
std::string write_wiring(const WiringProtocol& w);
WiringProtocol read_wiring(std::string_view text);

}  // namespace rgb

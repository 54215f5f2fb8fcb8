#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rgb/rational.hpp"
#include "rgb/strategy_table.hpp"

namespace rgb {

// a != x != y != b, i.e. (a != x) and (x != y) and (y != b).
constexpr bool rgb_predicate(int a, int b, int x, int y) { return a != x && x != y && y != b; }

// A single-round two-party game: a predicate V(a,b,x,y) and an input
// distribution pi(a,b). The predicate is tabulated at construction.
class Game {
 public:
  using Predicate = std::function<bool(int a, int b, int x, int y)>;

  // input_dist is indexed a * |B| + b; must be nonnegative and sum to 1.
  Game(std::string name, BoxShape shape, const Predicate& predicate, std::vector<Rat> input_dist);

  // Same predicate with the uniform input distribution.
  static Game uniform(std::string name, BoxShape shape, const Predicate& predicate);

  const std::string& name() const { return name_; }
  const BoxShape& shape() const { return shape_; }
  bool accepts(int a, int b, int x, int y) const { return accepts_[shape_.index(a, b, x, y)] != 0; }
  const Rat& input_weight(int a, int b) const { return input_dist_[static_cast<std::size_t>(a) * shape_.in_b.size() + b]; }

 private:
  std::string name_;
  BoxShape shape_;
  std::vector<char> accepts_;
  std::vector<Rat> input_dist_;
};

// The RGB game: three colours each side, uniform inputs.
Game rgb_game();

// The stricter condition that defines the RGRB box: the RGB predicate plus
// (x,y) != (b,a). Winning it means landing inside RGRB's support.
Game rgrb_condition_game();

// CHSH: binary alphabets, x XOR y = a AND b, uniform inputs.
Game chsh_game();

template <class T>
T win_probability(const Table<T>& s, const Game& g) {
  require_same_shape(s.shape(), g.shape(), "win_probability");
  const BoxShape& sh = g.shape();
  T total(0);
  for (int a = 0; a < sh.in_a.size(); ++a) {
    for (int b = 0; b < sh.in_b.size(); ++b) {
      T row(0);
      for (int x = 0; x < sh.out_x.size(); ++x)
        for (int y = 0; y < sh.out_y.size(); ++y)
          if (g.accepts(a, b, x, y)) row += s(a, b, x, y);
      total += from_rat<T>(g.input_weight(a, b)) * row;
    }
  }
  return total;
}

// Deterministic strategy x = f_a(a), y = f_b(b). fa has |A| entries with
// values in X, fb has |B| entries with values in Y.
StrategyTable deterministic_strategy(const std::vector<int>& fa, const std::vector<int>& fb, const BoxShape& shape);

// Guard on exhaustive searches.
inline constexpr double kEnumerationLimit = 1e9;

// Number of deterministic boxes (one (x,y) per input pair) that win with
// probability one: the product over (a,b) of the number of accepted (x,y).
std::uint64_t enumerate_winning_deterministic_boxes(const Game& g);

struct LocalBound {
  Rat value;
  std::vector<int> fa;
  std::vector<int> fb;
};

// Maximum winning probability over deterministic pairs (f_a, f_b), with the
// lexicographically first maximizer (f_a first, then f_b).
LocalBound local_bound(const Game& g);

}  // namespace rgb

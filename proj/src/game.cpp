#include "rgb/game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rgb {

Game::Game(std::string name, BoxShape shape, const Predicate& predicate, std::vector<Rat> input_dist)
    : name_(std::move(name)), shape_(shape), input_dist_(std::move(input_dist)) {
  const std::size_t pairs = static_cast<std::size_t>(shape_.in_a.size()) * shape_.in_b.size();
  if (input_dist_.size() != pairs) {
    throw std::invalid_argument("input distribution needs " + std::to_string(pairs) + " weights");
  }
  Rat sum(0);
  for (const Rat& w : input_dist_) {
    if (w < Rat(0)) throw std::invalid_argument("negative input weight " + w.str());
    sum += w;
  }
  if (sum != Rat(1)) throw std::invalid_argument("input distribution sums to " + sum.str());

  accepts_.resize(shape_.num_entries());
  for (int a = 0; a < shape_.in_a.size(); ++a)
    for (int b = 0; b < shape_.in_b.size(); ++b)
      for (int x = 0; x < shape_.out_x.size(); ++x)
        for (int y = 0; y < shape_.out_y.size(); ++y)
          accepts_[shape_.index(a, b, x, y)] = predicate(a, b, x, y) ? 1 : 0;
}

Game Game::uniform(std::string name, BoxShape shape, const Predicate& predicate) {
  const long pairs = static_cast<long>(shape.in_a.size()) * shape.in_b.size();
  return Game(std::move(name), shape, predicate, std::vector<Rat>(static_cast<std::size_t>(pairs), Rat(1, pairs)));
}

Game rgb_game() { return Game::uniform("rgb", BoxShape::uniform(3), rgb_predicate); }

Game rgrb_condition_game() {
  return Game::uniform("rgrb-condition", BoxShape::uniform(3), [](int a, int b, int x, int y) {
    return rgb_predicate(a, b, x, y) && !(x == b && y == a);
  });
}

Game chsh_game() {
  return Game::uniform("chsh", BoxShape::uniform(2), [](int a, int b, int x, int y) { return (x ^ y) == (a & b); });
}

StrategyTable deterministic_strategy(const std::vector<int>& fa, const std::vector<int>& fb, const BoxShape& shape) {
  if (fa.size() != static_cast<std::size_t>(shape.in_a.size()) ||
      fb.size() != static_cast<std::size_t>(shape.in_b.size())) {
    throw std::invalid_argument("deterministic_strategy: function not total on its input alphabet");
  }
  for (int v : fa)
    if (!shape.out_x.contains(v)) throw std::invalid_argument("deterministic_strategy: f_a value out of range");
  for (int v : fb)
    if (!shape.out_y.contains(v)) throw std::invalid_argument("deterministic_strategy: f_b value out of range");
  return StrategyTable::from_function(shape, [&](int a, int b, int x, int y) {
    return (x == fa[a] && y == fb[b]) ? 1 : 0;
  });
}

std::uint64_t enumerate_winning_deterministic_boxes(const Game& g) {
  const BoxShape& sh = g.shape();
  const double assignments =
      std::pow(static_cast<double>(sh.out_x.size()) * sh.out_y.size(), static_cast<double>(sh.in_a.size()) * sh.in_b.size());
  if (assignments > kEnumerationLimit) {
    throw std::length_error("enumeration guard exceeded: " + std::to_string(assignments) + " assignments");
  }
  std::uint64_t count = 1;
  for (int a = 0; a < sh.in_a.size(); ++a) {
    for (int b = 0; b < sh.in_b.size(); ++b) {
      std::uint64_t row = 0;
      for (int x = 0; x < sh.out_x.size(); ++x)
        for (int y = 0; y < sh.out_y.size(); ++y)
          if (g.accepts(a, b, x, y)) ++row;
      count *= row;
    }
  }
  return count;
}

namespace {

// Advances f to the next function in lexicographic order; false on wrap.
bool next_function(std::vector<int>& f, int range) {
  for (std::size_t i = f.size(); i-- > 0;) {
    if (++f[i] < range) return true;
    f[i] = 0;
  }
  return false;
}

}  // namespace

LocalBound local_bound(const Game& g) {
  const BoxShape& sh = g.shape();
  const double pairs = std::pow(static_cast<double>(sh.out_x.size()), sh.in_a.size()) *
                       std::pow(static_cast<double>(sh.out_y.size()), sh.in_b.size());
  if (pairs > kEnumerationLimit) {
    throw std::length_error("enumeration guard exceeded: " + std::to_string(pairs) + " function pairs");
  }

  std::vector<int> fa(static_cast<std::size_t>(sh.in_a.size()), 0);
  std::vector<int> fb(static_cast<std::size_t>(sh.in_b.size()), 0);
  LocalBound best{Rat(-1), fa, fb};
  do {
    std::fill(fb.begin(), fb.end(), 0);
    do {
      Rat win(0);
      for (int a = 0; a < sh.in_a.size(); ++a)
        for (int b = 0; b < sh.in_b.size(); ++b)
          if (g.accepts(a, b, fa[a], fb[b])) win += g.input_weight(a, b);
      if (win > best.value) best = {win, fa, fb};
    } while (next_function(fb, sh.out_y.size()));
  } while (next_function(fa, sh.out_x.size()));
  return best;
}

}  // namespace rgb

#include "rgb/family.hpp"

#include <stdexcept>

#include "rgb/game.hpp"

namespace rgb {

const std::array<std::pair<int, int>, 6>& ordered_pairs() {
  static const std::array<std::pair<int, int>, 6> pairs{{{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}}};
  return pairs;
}

const std::array<std::string, 15>& WinningFamilyParams::variable_names() {
  static const std::array<std::string, 15> names{"p0",  "p1",  "p2",  "p01", "p02", "p10", "p12", "p20",
                                                 "p21", "q01", "q02", "q10", "q12", "q20", "q21"};
  return names;
}

std::vector<Rat> WinningFamilyParams::to_vector() const {
  std::vector<Rat> v(p.begin(), p.end());
  for (auto [u, w] : ordered_pairs()) v.push_back(pair[u][w]);
  for (auto [u, w] : ordered_pairs()) v.push_back(q[u][w]);
  return v;
}

WinningFamilyParams WinningFamilyParams::from_vector(const std::vector<Rat>& values) {
  if (values.size() != 15) throw std::invalid_argument("winning family needs 15 parameters");
  WinningFamilyParams out;
  for (int u = 0; u < 3; ++u) out.p[u] = values[u];
  std::size_t i = 3;
  for (auto [u, w] : ordered_pairs()) out.pair[u][w] = values[i++];
  for (auto [u, w] : ordered_pairs()) out.q[u][w] = values[i++];
  return out;
}

WinningFamilyParams WinningFamilyParams::constant(const Rat& value) {
  return from_vector(std::vector<Rat>(15, value));
}

void WinningFamilyParams::validate() const {
  const auto names = variable_names();
  const auto values = to_vector();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < Rat(0) || values[i] > Rat(1)) {
      throw std::invalid_argument("parameter " + names[i] + " = " + values[i].str() + " outside [0,1]");
    }
  }
  for (auto [u, v] : ordered_pairs()) {
    if (pair[u][v] + q[u][v] > Rat(1)) {
      throw std::invalid_argument("p" + std::to_string(u) + std::to_string(v) + " + q" + std::to_string(u) +
                                  std::to_string(v) + " exceeds 1");
    }
  }
}

StrategyTable family_strategy(const WinningFamilyParams& params) {
  params.validate();
  std::vector<Rat> entries(BoxShape::uniform(3).num_entries(), Rat(0));
  const BoxShape shape = BoxShape::uniform(3);
  auto at = [&](int a, int b, int x, int y) -> Rat& { return entries[shape.index(a, b, x, y)]; };
  for (int u = 0; u < 3; ++u) {
    at(u, u, mod3(u + 1), mod3(u - 1)) = params.p[u];
    at(u, u, mod3(u - 1), mod3(u + 1)) = Rat(1) - params.p[u];
  }
  for (auto [u, v] : ordered_pairs()) {
    const int w = 3 - u - v;
    at(u, v, w, u) = params.pair[u][v];
    at(u, v, v, w) = params.q[u][v];
    at(u, v, v, u) = Rat(1) - params.pair[u][v] - params.q[u][v];
  }
  return StrategyTable(shape, std::move(entries));
}

WinningFamilyParams rgb0_params() {
  WinningFamilyParams w = WinningFamilyParams::constant(Rat(0));
  w.p = {Rat(1), Rat(1), Rat(1)};
  // b = a-1 lands on (w,a), b = a+1 on (b,w).
  w.pair[0][2] = w.pair[1][0] = w.pair[2][1] = Rat(1);
  w.q[0][1] = w.q[1][2] = w.q[2][0] = Rat(1);
  return w;
}

StrategyTable rgb0() {
  return StrategyTable::from_function(BoxShape::uniform(3), [](int a, int b, int x, int y) {
    const int want_y = (b == mod3(a - 1)) ? a : mod3(a - 1);
    return (x == mod3(a + 1) && y == want_y) ? 1 : 0;
  });
}

StrategyTable rgrb() {
  auto allowed = [](int a, int b, int x, int y) { return rgb_predicate(a, b, x, y) && !(x == b && y == a); };
  return StrategyTable::from_function(BoxShape::uniform(3), [&](int a, int b, int x, int y) {
    if (!allowed(a, b, x, y)) return Rat(0);
    long solutions = 0;
    for (int xx = 0; xx < 3; ++xx)
      for (int yy = 0; yy < 3; ++yy)
        if (allowed(a, b, xx, yy)) ++solutions;
    return Rat(1, solutions);
  });
}

}  // namespace rgb

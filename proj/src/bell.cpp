#include "rgb/bell.hpp"

#include "rgb/game.hpp"
#include "rgb/quantum.hpp"

namespace rgb {

LocalBellSweep local_bell_sweep() {
  LocalBellSweep sweep;
  const Game game = rgb_game();
  const BoxShape shape = BoxShape::uniform(3);
  std::vector<int> fa(3), fb(3);
  bool first = true;
  for (int ia = 0; ia < 27; ++ia) {
    for (int ib = 0; ib < 27; ++ib) {
      for (int i = 0, ca = ia, cb = ib; i < 3; ++i, ca /= 3, cb /= 3) {
        fa[static_cast<std::size_t>(2 - i)] = ca % 3;
        fb[static_cast<std::size_t>(2 - i)] = cb % 3;
      }
      ++sweep.pairs;
      const StrategyTable s = deterministic_strategy(fa, fb, shape);
      StrategyTable binary = s;
      try {
        binary = reduce_to_binary(s);
      } catch (const std::domain_error&) {
        continue;
      }
      ++sweep.reducible;
      const auto c = correlations_from_table(binary);
      const Rat r = bell_quantity(c);
      const Rat p = win_probability(s, game);
      if (bell_sum(c) != Rat(36) * p - Rat(24)) sweep.identity_holds = false;
      if (p > sweep.max_win) sweep.max_win = p;
      if (first || r > sweep.max_bell) {
        sweep.max_bell = r;
        sweep.fa = fa;
        sweep.fb = fb;
        first = false;
      }
    }
  }
  return sweep;
}

}  // namespace rgb

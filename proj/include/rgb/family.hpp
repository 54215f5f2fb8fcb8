#pragma once

#include <array>
#include <string>
#include <vector>

#include "rgb/rational.hpp"
#include "rgb/strategy_table.hpp"

namespace rgb {

// The fifteen parameters of the RGB winning family:
//   P(u+1,u-1|u,u) = p_u,   P(u-1,u+1|u,u) = 1 - p_u
//   P(w,u|u,v) = p_uv,  P(v,w|u,v) = q_uv,  P(v,u|u,v) = 1 - p_uv - q_uv
// where {u,v,w} = {0,1,2}. Diagonal entries of pair/q are unused.
struct WinningFamilyParams {
  std::array<Rat, 3> p;
  std::array<std::array<Rat, 3>, 3> pair;
  std::array<std::array<Rat, 3>, 3> q;

  // Every parameter in [0,1] and pair(u,v) + q(u,v) <= 1.
  void validate() const;

  // Canonical ordering: p0 p1 p2 p01 p02 p10 p12 p20 p21 q01 q02 q10 q12 q20 q21.
  static const std::array<std::string, 15>& variable_names();
  std::vector<Rat> to_vector() const;
  static WinningFamilyParams from_vector(const std::vector<Rat>& values);

  static WinningFamilyParams constant(const Rat& value);

  friend bool operator==(const WinningFamilyParams&, const WinningFamilyParams&) = default;
};

// Ordered off-diagonal pairs (u,v) in canonical order.
const std::array<std::pair<int, int>, 6>& ordered_pairs();

StrategyTable family_strategy(const WinningFamilyParams& params);

// Parameter setting that reproduces the deterministic RGB0 box.
WinningFamilyParams rgb0_params();

// x = a+1; y = a when b = a-1, otherwise y = a-1.
StrategyTable rgb0();

// Uniform over the solutions of the RGB predicate with (x,y) != (b,a).
StrategyTable rgrb();

}  // namespace rgb

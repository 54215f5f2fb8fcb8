#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rgb/rational.hpp"
#include "rgb/strategy_table.hpp"

namespace rgb {

// <A_i B_j> for i, j in {0,1,2}; entries in [-1,1].
template <class T>
class CorrelationMatrix {
 public:
  explicit CorrelationMatrix(std::array<std::array<T, 3>, 3> c) : c_(std::move(c)) {
    for (const auto& row : c_)
      for (const auto& v : row)
        if (v < T(-1) || v > T(1)) throw std::invalid_argument("correlation outside [-1,1]");
  }

  const T& operator()(int i, int j) const { return c_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }

 private:
  std::array<std::array<T, 3>, 3> c_;
};

// Sum_i -2 c[i][i] + c[i][i+1] + c[i][i-1], before the absolute value.
template <class T>
T bell_sum(const CorrelationMatrix<T>& c) {
  T s(0);
  for (int i = 0; i < 3; ++i) s += T(-2) * c(i, i) + c(i, mod3(i + 1)) + c(i, mod3(i - 1));
  return s;
}

template <class T>
T bell_quantity(const CorrelationMatrix<T>& c) {
  return abs(bell_sum(c));
}

// (1/36) Sum_i (8 - 2 c[i][i] + c[i][i+1] + c[i][i-1]) = (24 + bell_sum) / 36.
template <class T>
T win_from_correlations(const CorrelationMatrix<T>& c) {
  return (T(24) + bell_sum(c)) / T(36);
}

namespace detail {

template <class T>
void require_binary(const Table<T>& s, const char* what) {
  require_same_shape(s.shape(), BoxShape::of(3, 3, 2, 2), what);
}

template <class T>
T p_same(const Table<T>& s, int a, int b) {
  return s(a, b, 0, 0) + s(a, b, 1, 1);
}

}  // namespace detail

// Win probability of a binary-reduced table from P(x = y | a,b) alone:
// (1/9) Sum_u 2 - p(u,u) + p(u,u+1)/2 + p(u,u-1)/2.
template <class T>
T same_output_win(const Table<T>& s) {
  detail::require_binary(s, "same_output_win");
  T total(0);
  for (int u = 0; u < 3; ++u) {
    total += T(2) - detail::p_same(s, u, u) + detail::p_same(s, u, mod3(u + 1)) / T(2) +
             detail::p_same(s, u, mod3(u - 1)) / T(2);
  }
  return total / T(9);
}

// Same quantity by listing the losing cells of a binary-reduced table:
// (1/9) Sum_u 3 - p00(u,u) - p11(u,u) - p01(u,u+1) - p10(u,u-1).
template <class T>
T binary_win(const Table<T>& s) {
  detail::require_binary(s, "binary_win");
  T total(0);
  for (int u = 0; u < 3; ++u) {
    total += T(3) - s(u, u, 0, 0) - s(u, u, 1, 1) - s(u, mod3(u + 1), 0, 1) - s(u, mod3(u - 1), 1, 0);
  }
  return total / T(9);
}

// All deterministic colour strategy pairs; the ones that never output their
// own input reduce to binary form and get an exact Bell value.
struct LocalBellSweep {
  std::size_t pairs = 0;
  std::size_t reducible = 0;
  Rat max_bell{0};
  Rat max_win{0};
  std::vector<int> fa, fb;  // first maximizer of the Bell value
  bool identity_holds = true;  // bell_sum = 36 p - 24 on every reducible pair
};

LocalBellSweep local_bell_sweep();

}  // namespace rgb

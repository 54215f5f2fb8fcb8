#pragma once

#include <array>
#include <complex>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "rgb/bell.hpp"
#include "rgb/strategy_table.hpp"

namespace rgb {

using Complex = std::complex<double>;

inline constexpr double kAlgebraTol = 1e-12;

// Dense complex matrix. Every binary operation checks dimensions and throws
// std::invalid_argument on a mismatch.
class CMatrix {
 public:
  CMatrix(int rows, int cols);
  explicit CMatrix(Eigen::MatrixXcd m);
  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static CMatrix identity(int n);

  int rows() const { return static_cast<int>(m_.rows()); }
  int cols() const { return static_cast<int>(m_.cols()); }
  Complex operator()(int i, int j) const { return m_(i, j); }
  const Eigen::MatrixXcd& eigen() const { return m_; }

  CMatrix adjoint() const;
  Complex trace() const;
  CMatrix kron(const CMatrix& o) const;

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator+(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator-(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator*(Complex s, const CMatrix& a);

  bool approx_equal(const CMatrix& o, double tol = kAlgebraTol) const;
  bool is_hermitian(double tol = kAlgebraTol) const;

 private:
  Eigen::MatrixXcd m_;
};

// Pure two-qubit state, Alice (x) Bob ordering: index 2*alice + bob.
class SharedState {
 public:
  explicit SharedState(std::array<Complex, 4> amplitudes);

  const std::array<Complex, 4>& amplitudes() const { return amp_; }
  CMatrix density() const;
  CMatrix reduced_alice() const;
  CMatrix reduced_bob() const;

 private:
  std::array<Complex, 4> amp_;
};

// (|01> - |10>)/sqrt(2)
SharedState singlet();
// |00>
SharedState product_zero();

// Rank-1 projector onto cos(t/2)|0> + sin(t/2)|1>, t in degrees: a Bloch
// vector at angle t from +z towards +x.
CMatrix projector_from_bloch(double degrees);

// I - P
CMatrix complement(const CMatrix& p);

// Per input colour a rank-1 projector; the measurement outcome (positive =
// projector clicked) goes through the output rule to a colour.
class QubitStrategy {
 public:
  using OutputRule = std::function<int(int colour, bool positive)>;

  QubitStrategy(std::array<CMatrix, 3> projectors, OutputRule rule);

  const CMatrix& projector(int colour) const { return projectors_.at(static_cast<std::size_t>(colour)); }
  int output(int colour, bool positive) const { return rule_(colour, positive); }

 private:
  std::array<CMatrix, 3> projectors_;
  OutputRule rule_;
};

// Positive -> c+1, negative -> c-1.
int next_colour_rule(int colour, bool positive);

// Projectors at the given Bloch angles with next_colour_rule.
QubitStrategy bloch_strategy(const std::array<double, 3>& degrees);

inline constexpr std::array<double, 3> kTrineAngles{0.0, -120.0, 120.0};

// |0>, |v->, |v+> with |v+-> = 1/2|0> +- sqrt(3)/2|1>.
QubitStrategy trine_strategy();

// tr(|psi><psi| (mA (x) mB)). mA and mB must be 2x2 Hermitian with spectrum
// in [0,1]; the result is clamped to [0,1].
double joint_prob(const SharedState& state, const CMatrix& ma, const CMatrix& mb);

// P(x,y|a,b) over colours.
RealTable quantum_strategy_table(const SharedState& state, const QubitStrategy& sa, const QubitStrategy& sb);

// Losing mass x = y averaged over the three input pairs of each relation.
struct ErrorTerms {
  double equal;  // b = a
  double plus;   // b = a + 1
  double minus;  // b = a - 1
  // 1 - (3 equal + 3 plus + 3 minus) / 9
  double win() const { return 1.0 - (equal + plus + minus) / 3.0; }
};

ErrorTerms error_terms(const RealTable& colour_table);

template <class T>
struct ReduceTolerance {
  static T value() { return T(0); }
};

template <>
struct ReduceTolerance<double> {
  static double value() { return kAlgebraTol; }
};

// Relabels outputs a-1 -> 0, a+1 -> 1 (and likewise for Bob). Throws
// std::domain_error if the table puts mass on x = a or y = b.
template <class T>
Table<T> reduce_to_binary(const Table<T>& s, const T& tol = ReduceTolerance<T>::value()) {
  require_same_shape(s.shape(), BoxShape::uniform(3), "reduce_to_binary");
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      if (!within(s.alice_marginal(a, b, a), T(0), tol) || !within(s.bob_marginal(a, b, b), T(0), tol)) {
        throw std::domain_error("strategy plays a sure-losing colour at a=" + std::to_string(a) +
                                ", b=" + std::to_string(b));
      }
  const auto colour = [](int own, int bit) { return mod3(own + (bit == 0 ? -1 : 1)); };
  return Table<T>::from_function(BoxShape::of(3, 3, 2, 2), [&](int a, int b, int x, int y) {
    return s(a, b, colour(a, x), colour(b, y));
  }, Tolerance<T>::table());
}

// <A_a B_b> = 2 P(x = y | a,b) - 1 on a binary-reduced table.
template <class T>
CorrelationMatrix<T> correlations_from_table(const Table<T>& binary) {
  require_same_shape(binary.shape(), BoxShape::of(3, 3, 2, 2), "correlations_from_table");
  std::array<std::array<T, 3>, 3> c;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const T same = binary(a, b, 0, 0) + binary(a, b, 1, 1);
      T v = T(2) * same - T(1);
      if (v > T(1)) v = T(1);
      if (v < T(-1)) v = T(-1);
      c[a][b] = v;
    }
  return CorrelationMatrix<T>(c);
}

}  // namespace rgb

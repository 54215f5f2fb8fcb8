#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rgb {

inline constexpr double kSdpTol = 1e-9;

// Real symmetric matrix; only the upper triangle is stored, so symmetry holds
// by construction.
class SymMatrix {
 public:
  explicit SymMatrix(int dim);

  // Throws if rows are ragged or the matrix is not exactly symmetric.
  static SymMatrix from_dense(const std::vector<std::vector<double>>& rows);
  static SymMatrix identity(int dim);
  static SymMatrix diagonal(const std::vector<double>& d);

  int dim() const { return dim_; }
  double operator()(int i, int j) const { return data_[slot(i, j)]; }
  void set(int i, int j, double v) { data_[slot(i, j)] = v; }

  double trace() const;
  bool is_diagonal() const;
  std::vector<std::vector<double>> dense() const;

  friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
  friend SymMatrix operator*(double s, const SymMatrix& a);

 private:
  std::size_t slot(int i, int j) const;

  int dim_;
  std::vector<double> data_;
};

// tr(A B) for symmetric A, B.
double trace_product(const SymMatrix& a, const SymMatrix& b);

// Eigenvalues by cyclic Jacobi rotations, descending.
std::vector<double> sym_eigenvalues(const SymMatrix& m);

// Number of eigenvalues above tol in absolute value.
int numerical_rank(const SymMatrix& m, double tol = kSdpTol);

// [[0, C], [C, 0]] with C = -2 on the diagonal and 1 elsewhere.
SymMatrix w_matrix();

// Gram matrix of the optimal vectors: entries 1, -1/2 within each party's
// block, -1 and 1/2 across.
SymMatrix g_prime();

// (3/2) I
SymMatrix lambda_prime();

inline constexpr int kVectorDim = 6;
using RealVector = std::array<double, kVectorDim>;

// Unit vectors x_1..x_3 for Alice and y_1..y_3 for Bob.
struct VectorStrategy {
  std::array<RealVector, 3> x;
  std::array<RealVector, 3> y;

  void validate(double tol = 1e-12) const;
};

SymMatrix gram_from_vectors(const VectorStrategy& v);

// Sum_i -2 x_i.y_i + x_i.y_{i+1} + x_i.y_{i-1}
double realvec_value(const VectorStrategy& v);

struct PrimalCheck {
  double value;  // (1/2) tr(G W)
  bool feasible;
  std::vector<double> eigenvalues;
};

PrimalCheck verify_primal(const SymMatrix& g);

struct DualCheck {
  double value;  // tr(Lambda)
  bool feasible;
  std::vector<double> slack_eigenvalues;  // of -W/2 + Lambda
};

// Lambda must be diagonal.
DualCheck verify_dual(const SymMatrix& lambda);

struct CertificateReport {
  double primal_value;
  double dual_value;
  double gap;
  std::vector<double> primal_eigenvalues;
  std::vector<double> dual_slack_eigenvalues;
  double bound;
  double implied_win_bound;  // (24 + bound) / 36
};

class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Checks G' and Lambda' and their zero gap; throws CertificateError if any
// check fails.
CertificateReport certify_quantum_bound();

inline constexpr double kAscentTol = 1e-12;
inline constexpr int kAscentMaxSweeps = 10000;

struct RestartTrace {
  std::uint64_t seed;
  double value;
  int sweeps;
  bool monotone;
  std::vector<double> history;  // objective after each sweep
};

struct AscentResult {
  double best_value;
  VectorStrategy best;
  int best_restart;
  int gram_rank;
  bool monotone;  // over every restart
  std::vector<RestartTrace> restarts;
};

// Maximizes realvec_value by alternating exact block updates from seeded
// random unit vectors. Restart r draws from seed + r, so the result does not
// depend on scheduling. A zero update direction reseeds that vector.
AscentResult alternating_ascent(std::uint64_t seed, int restarts);

}  // namespace rgb

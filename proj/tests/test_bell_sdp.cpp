#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "rgb/bell.hpp"
#include "rgb/game.hpp"
#include "rgb/quantum.hpp"
#include "rgb/sdp.hpp"

using namespace rgb;

namespace {

// Colour table that plays a-1 on bit 0 and a+1 on bit 1.
StrategyTable lift(const StrategyTable& binary) {
  return StrategyTable::from_function(BoxShape::uniform(3), [&](int a, int b, int x, int y) {
    if (x == a || y == b) return Rat(0);
    return binary(a, b, x == mod3(a + 1) ? 1 : 0, y == mod3(b + 1) ? 1 : 0);
  });
}

CorrelationMatrix<Rat> constant_correlations(Rat diag, Rat off) {
  std::array<std::array<Rat, 3>, 3> c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c[i][j] = i == j ? diag : off;
  return CorrelationMatrix<Rat>(c);
}

std::vector<std::vector<double>> random_symmetric(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<std::vector<double>> m(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i; j < m.size(); ++j) m[i][j] = m[j][i] = u(rng);
  return m;
}

RealVector random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  RealVector v;
  double s = 0;
  for (double& c : v) {
    c = n(rng);
    s += c * c;
  }
  for (double& c : v) c /= std::sqrt(s);
  return v;
}

}  // namespace

TEST(Bell, Examples) {
  EXPECT_EQ(bell_quantity(constant_correlations(Rat(-1), Rat(1))), Rat(12));
  EXPECT_EQ(win_from_correlations(constant_correlations(Rat(-1), Rat(1))), Rat(1));
  EXPECT_EQ(bell_quantity(constant_correlations(Rat(-1), Rat(1, 2))), Rat(9));
  EXPECT_EQ(win_from_correlations(constant_correlations(Rat(-1), Rat(1, 2))), Rat(11, 12));
  EXPECT_EQ(bell_sum(constant_correlations(Rat(1), Rat(-1))), Rat(-12));
  EXPECT_EQ(bell_quantity(constant_correlations(Rat(1), Rat(-1))), Rat(12));
  EXPECT_EQ(win_from_correlations(constant_correlations(Rat(0), Rat(0))), Rat(2, 3));
  std::array<std::array<Rat, 3>, 3> bad{};
  bad[1][2] = Rat(3, 2);
  EXPECT_THROW(CorrelationMatrix<Rat>{bad}, std::invalid_argument);
}

TEST(Bell, LocalSweep) {
  const LocalBellSweep s = local_bell_sweep();
  EXPECT_EQ(s.pairs, 729u);
  EXPECT_EQ(s.reducible, 64u);
  EXPECT_EQ(s.max_bell, Rat(8));
  EXPECT_EQ(s.max_win, Rat(8, 9));
  EXPECT_TRUE(s.identity_holds);
  // Oracle: brute force over colour pairs that avoid their own input.
  long best = 0;
  int reducible = 0;
  for (int ia = 0; ia < 27; ++ia)
    for (int ib = 0; ib < 27; ++ib) {
      const std::array<int, 3> fa{ia / 9, (ia / 3) % 3, ia % 3};
      const std::array<int, 3> fb{ib / 9, (ib / 3) % 3, ib % 3};
      bool ok = true;
      for (int i = 0; i < 3; ++i) ok = ok && fa[static_cast<std::size_t>(i)] != i && fb[static_cast<std::size_t>(i)] != i;
      if (!ok) continue;
      ++reducible;
      best = std::max(best, std::labs(oracle::deterministic_bell_sum(fa, fb)));
    }
  EXPECT_EQ(reducible, 64);
  EXPECT_EQ(Rat(best), s.max_bell);
  ASSERT_EQ(s.fa.size(), 3u);
  const std::array<int, 3> fa{s.fa[0], s.fa[1], s.fa[2]};
  const std::array<int, 3> fb{s.fb[0], s.fb[1], s.fb[2]};
  EXPECT_EQ(std::labs(oracle::deterministic_bell_sum(fa, fb)), 8);
}

TEST(Bell, WinFormsAgreeOnNoSignallingTables) {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 100; ++i) {
    const StrategyTable t = gen::random_ns_binary(rng, 1 + i % 6);
    const Rat direct = win_probability(lift(t), rgb_game());
    EXPECT_EQ(binary_win(t), direct);
    EXPECT_EQ(same_output_win(t), direct);
    EXPECT_EQ(win_from_correlations(correlations_from_table(t)), direct);
  }
}

TEST(Bell, CorrelationIdentityOnRandomMatrices) {
  std::mt19937_64 rng(55);
  for (int i = 0; i < 50; ++i) {
    std::array<std::array<Rat, 3>, 3> c;
    for (auto& row : c)
      for (Rat& v : row) v = Rat(2) * oracle::random_rat(rng, 20) - Rat(1);
    const CorrelationMatrix<Rat> m(c);
    Rat expanded(0);
    for (int k = 0; k < 3; ++k) expanded += Rat(8) - Rat(2) * m(k, k) + m(k, mod3(k + 1)) + m(k, mod3(k - 1));
    EXPECT_EQ(win_from_correlations(m), expanded / Rat(36));
    EXPECT_EQ(bell_sum(m), Rat(36) * win_from_correlations(m) - Rat(24));
    EXPECT_GE(bell_quantity(m), Rat(0));
  }
}

TEST(SymMatrix, Basics) {
  const SymMatrix m = SymMatrix::from_dense({{1, 2}, {2, 3}});
  EXPECT_EQ(m(1, 0), 2.0);
  EXPECT_EQ(m.trace(), 4.0);
  EXPECT_FALSE(m.is_diagonal());
  EXPECT_TRUE(SymMatrix::diagonal({1, 2, 3}).is_diagonal());
  EXPECT_EQ(trace_product(m, m), 1.0 + 8.0 + 9.0);
  EXPECT_THROW(SymMatrix::from_dense({{1, 2}, {2.5, 3}}), std::invalid_argument);
  EXPECT_THROW(SymMatrix::from_dense({{1, 2}}), std::invalid_argument);
  EXPECT_THROW(SymMatrix(0), std::invalid_argument);
  EXPECT_THROW(m(2, 0), std::out_of_range);
  EXPECT_THROW(m + SymMatrix(3), std::invalid_argument);
}

TEST(SymMatrix, JacobiMatchesEigen) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 40; ++i) {
    const int n = 1 + i % 8;
    const auto dense = random_symmetric(rng, n);
    const SymMatrix m = SymMatrix::from_dense(dense);
    const auto got = sym_eigenvalues(m);
    const auto want = oracle::eigenvalues(dense);
    ASSERT_EQ(got.size(), want.size());
    double sum = 0, sq = 0;
    for (std::size_t k = 0; k < got.size(); ++k) {
      EXPECT_NEAR(got[k], want[k], 1e-10);
      sum += got[k];
      sq += got[k] * got[k];
    }
    EXPECT_NEAR(sum, m.trace(), 1e-10);
    EXPECT_NEAR(sq, trace_product(m, m), 1e-9);
    EXPECT_TRUE(std::is_sorted(got.begin(), got.end(), std::greater<>()));
  }
}

TEST(Sdp, Witnesses) {
  const SymMatrix w = w_matrix();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      EXPECT_EQ(w(i, j), 0.0);
      EXPECT_EQ(w(3 + i, 3 + j), 0.0);
      EXPECT_EQ(w(i, 3 + j), i == j ? -2.0 : 1.0);
    }
  const auto ew = sym_eigenvalues(w);
  const std::vector<double> want_w{3, 3, 0, 0, -3, -3};
  for (std::size_t k = 0; k < 6; ++k) EXPECT_NEAR(ew[k], want_w[k], 1e-12);

  const auto eg = sym_eigenvalues(g_prime());
  const std::vector<double> want_g{3, 3, 0, 0, 0, 0};
  for (std::size_t k = 0; k < 6; ++k) EXPECT_NEAR(eg[k], want_g[k], 1e-12);
  EXPECT_EQ(numerical_rank(g_prime()), 2);

  const PrimalCheck p = verify_primal(g_prime());
  EXPECT_TRUE(p.feasible);
  EXPECT_NEAR(p.value, 9.0, 1e-12);

  const DualCheck d = verify_dual(lambda_prime());
  EXPECT_TRUE(d.feasible);
  EXPECT_NEAR(d.value, 9.0, 1e-12);
  const std::vector<double> want_s{3, 3, 1.5, 1.5, 0, 0};
  for (std::size_t k = 0; k < 6; ++k) EXPECT_NEAR(d.slack_eigenvalues[k], want_s[k], 1e-12);
}

TEST(Sdp, Checks) {
  EXPECT_FALSE(verify_dual(SymMatrix(6)).feasible);
  const DualCheck big = verify_dual(10.0 * SymMatrix::identity(6));
  EXPECT_TRUE(big.feasible);
  EXPECT_NEAR(big.value, 60.0, 1e-12);
  EXPECT_THROW(verify_dual(g_prime()), std::invalid_argument);
  EXPECT_THROW(verify_dual(SymMatrix::identity(5)), std::invalid_argument);
  EXPECT_FALSE(verify_primal(2.0 * g_prime()).feasible);  // diagonal 2
  EXPECT_FALSE(verify_primal(SymMatrix::from_dense({{1, 2, 0, 0, 0, 0},
                                                    {2, 1, 0, 0, 0, 0},
                                                    {0, 0, 1, 0, 0, 0},
                                                    {0, 0, 0, 1, 0, 0},
                                                    {0, 0, 0, 0, 1, 0},
                                                    {0, 0, 0, 0, 0, 1}}))
                   .feasible);
  EXPECT_TRUE(verify_primal(SymMatrix::identity(6)).feasible);
  EXPECT_NEAR(verify_primal(SymMatrix::identity(6)).value, 0.0, 1e-15);
}

TEST(Sdp, Certificate) {
  const CertificateReport r = certify_quantum_bound();
  EXPECT_NEAR(r.primal_value, 9.0, 1e-12);
  EXPECT_NEAR(r.dual_value, 9.0, 1e-12);
  EXPECT_NEAR(r.gap, 0.0, 1e-12);
  EXPECT_NEAR(r.bound, 9.0, 1e-12);
  EXPECT_NEAR(r.implied_win_bound, 11.0 / 12.0, 1e-12);
  EXPECT_EQ(r.primal_eigenvalues.size(), 6u);
}

TEST(Sdp, GramOfVectors) {
  // Trine directions in a plane: x_i at 120 i degrees, y_i opposite.
  VectorStrategy v{};
  for (int i = 0; i < 3; ++i) {
    const double t = 2.0 * std::numbers::pi * i / 3.0;
    v.x[static_cast<std::size_t>(i)] = {std::cos(t), std::sin(t), 0, 0, 0, 0};
    v.y[static_cast<std::size_t>(i)] = {-std::cos(t), -std::sin(t), 0, 0, 0, 0};
  }
  EXPECT_NEAR(realvec_value(v), 9.0, 1e-12);
  const SymMatrix g = gram_from_vectors(v);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) EXPECT_NEAR(g(i, j), g_prime()(i, j), 1e-12);
  EXPECT_NEAR(verify_primal(g).value, realvec_value(v), 1e-12);
  v.x[0][0] = 2.0;
  EXPECT_THROW(gram_from_vectors(v), std::invalid_argument);
}

TEST(Properties, WeakDuality) {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    VectorStrategy v{};
    for (auto& x : v.x) x = random_unit(rng);
    for (auto& y : v.y) y = random_unit(rng);
    const PrimalCheck p = verify_primal(gram_from_vectors(v));
    ASSERT_TRUE(p.feasible);
    EXPECT_NEAR(p.value, realvec_value(v), 1e-12);
    EXPECT_LE(p.value, 9.0 + 1e-9);
    // Anything above Lambda' stays dual feasible.
    std::vector<double> d(6);
    for (double& x : d) x = 1.5 + u(rng);
    const DualCheck dc = verify_dual(SymMatrix::diagonal(d));
    ASSERT_TRUE(dc.feasible);
    EXPECT_GE(dc.value, p.value - 1e-9);
  }
}

TEST(Ascent, ReachesNine) {
  const AscentResult r = alternating_ascent(1, 5);
  EXPECT_GE(r.best_value, 9.0 - 1e-6);
  EXPECT_LE(r.best_value, 9.0 + 1e-9);
  EXPECT_TRUE(r.monotone);
  EXPECT_EQ(r.restarts.size(), 5u);
  EXPECT_EQ(r.gram_rank, 2);
  EXPECT_NEAR(realvec_value(r.best), r.best_value, 1e-12);
  for (const auto& t : r.restarts) {
    EXPECT_LE(t.sweeps, kAscentMaxSweeps);
    for (std::size_t k = 1; k < t.history.size(); ++k) EXPECT_GE(t.history[k], t.history[k - 1] - 1e-12);
  }
  EXPECT_THROW(alternating_ascent(1, 0), std::invalid_argument);
}

TEST(Ascent, Deterministic) {
  const AscentResult a = alternating_ascent(42, 3);
  const AscentResult b = alternating_ascent(42, 3);
  EXPECT_EQ(a.best_value, b.best_value);
  EXPECT_EQ(a.best_restart, b.best_restart);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(a.restarts[i].history, b.restarts[i].history);
  // Restart r depends only on seed + r.
  const AscentResult c = alternating_ascent(43, 1);
  EXPECT_EQ(c.restarts[0].history, a.restarts[1].history);
}

TEST(Properties, QuantumValueBelowBound) {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> angle(-180.0, 180.0);
  for (int i = 0; i < 30; ++i) {
    const RealTable t = quantum_strategy_table(singlet(), bloch_strategy({angle(rng), angle(rng), angle(rng)}),
                                               bloch_strategy({angle(rng), angle(rng), angle(rng)}));
    EXPECT_LE(bell_quantity(correlations_from_table(reduce_to_binary(t))), 9.0 + 1e-9);
  }
}

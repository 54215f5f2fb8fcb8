#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "rgb/box_io.hpp"
#include "rgb/family.hpp"
#include "rgb/game.hpp"

using namespace rgb;

TEST(Rational, LowestTermsAndPositiveDenominator) {
  const Rat r(6, -8);
  EXPECT_EQ(r.numerator(), "-3");
  EXPECT_EQ(r.denominator(), "4");
  EXPECT_EQ(r.str(), "-3/4");
  EXPECT_EQ(Rat(5).str(), "5/1");
}

TEST(Rational, ExactArithmetic) {
  EXPECT_EQ(Rat(1, 3) + Rat(1, 6), Rat(1, 2));
  EXPECT_EQ(Rat(2, 3) * Rat(3, 4), Rat(1, 2));
  EXPECT_EQ(Rat(1, 2) - Rat(3, 4), Rat(-1, 4));
  EXPECT_EQ(Rat(1, 2) / Rat(1, 4), Rat(2));
  EXPECT_LT(Rat(1, 3), Rat(1, 2));
  EXPECT_EQ(abs(Rat(-7, 9)), Rat(7, 9));
  // 1/3 summed three times is exactly one, unlike floating point.
  EXPECT_EQ(Rat(1, 3) + Rat(1, 3) + Rat(1, 3), Rat(1));
}

TEST(Rational, Errors) {
  EXPECT_THROW(Rat(1, 0), std::domain_error);
  EXPECT_THROW(Rat(1) / Rat(0), std::domain_error);
  EXPECT_THROW(Rat::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rat::parse("abc"), std::invalid_argument);
  EXPECT_THROW(Rat::parse("0.5"), std::invalid_argument);
  EXPECT_EQ(Rat::parse("4/6"), Rat(2, 3));
  EXPECT_EQ(Rat::parse("-2"), Rat(-2));
}

TEST(Alphabet, RejectsEmpty) {
  EXPECT_THROW(Alphabet(0), std::invalid_argument);
  EXPECT_TRUE(Alphabet(3).contains(2));
  EXPECT_FALSE(Alphabet(3).contains(3));
}

TEST(Predicate, Examples) {
  EXPECT_TRUE(rgb_predicate(0, 0, 1, 2));
  for (int y = 0; y < 3; ++y) EXPECT_FALSE(rgb_predicate(0, 1, 0, y));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      int n = 0;
      for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) n += rgb_predicate(a, b, x, y);
      EXPECT_EQ(n, a == b ? 2 : 3) << a << "," << b;
    }
}

TEST(Game, RgbGameIsUniform) {
  const Game g = rgb_game();
  EXPECT_EQ(g.input_weight(1, 2), Rat(1, 9));
  EXPECT_EQ(g.shape(), BoxShape::uniform(3));
  Rat sum(0);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) sum += g.input_weight(a, b);
  EXPECT_EQ(sum, Rat(1));
}

TEST(Game, RejectsBadDistribution) {
  EXPECT_THROW(Game("g", BoxShape::uniform(2), rgb_predicate, {Rat(1, 2), Rat(1, 2), Rat(0), Rat(1, 2)}),
               std::invalid_argument);
  EXPECT_THROW(Game("g", BoxShape::uniform(2), rgb_predicate, {Rat(-1), Rat(1), Rat(1), Rat(0)}),
               std::invalid_argument);
  EXPECT_THROW(Game("g", BoxShape::uniform(2), rgb_predicate, {Rat(1)}), std::invalid_argument);
}

TEST(Table, Validation) {
  EXPECT_THROW(StrategyTable(BoxShape::uniform(2), std::vector<Rat>(16, Rat(1, 3))), std::invalid_argument);
  EXPECT_THROW(StrategyTable(BoxShape::uniform(2), std::vector<Rat>(15, Rat(1, 4))), std::invalid_argument);
  std::vector<Rat> e(16, Rat(0));
  for (int row = 0; row < 4; ++row) {
    e[static_cast<std::size_t>(row * 4)] = Rat(3, 2);
    e[static_cast<std::size_t>(row * 4 + 1)] = Rat(-1, 2);
  }
  EXPECT_THROW(StrategyTable(BoxShape::uniform(2), e), std::invalid_argument);
}

TEST(WinProbability, Examples) {
  EXPECT_EQ(win_probability(rgb0(), rgb_game()), Rat(1));
  EXPECT_EQ(win_probability(rgrb(), rgb_game()), Rat(1));
  EXPECT_THROW(win_probability(rgrb(), chsh_game()), std::invalid_argument);
}

TEST(Deterministic, IdentityAndLocalOptimum) {
  const StrategyTable id = deterministic_strategy({0, 1, 2}, {0, 1, 2}, BoxShape::uniform(3));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) EXPECT_EQ(id(a, b, a, b), Rat(1));
  // f(R)=B, f(G)=f(B)=R; g(R)=g(B)=G, g(G)=B.
  const StrategyTable s = deterministic_strategy({kBlue, kRed, kRed}, {kGreen, kBlue, kGreen}, BoxShape::uniform(3));
  EXPECT_EQ(win_probability(s, rgb_game()), Rat(8, 9));
  EXPECT_THROW(deterministic_strategy({0, 1}, {0, 1, 2}, BoxShape::uniform(3)), std::invalid_argument);
  EXPECT_THROW(deterministic_strategy({0, 1, 3}, {0, 1, 2}, BoxShape::uniform(3)), std::invalid_argument);
}

TEST(Family, AllHalvesIsRgrb) { EXPECT_EQ(family_strategy(WinningFamilyParams::constant(Rat(1, 2))), rgrb()); }

TEST(Family, Rgb0Setting) { EXPECT_EQ(family_strategy(rgb0_params()), rgb0()); }

TEST(Family, RejectsInvalid) {
  auto p = WinningFamilyParams::constant(Rat(1, 2));
  p.pair[0][1] = Rat(3, 4);
  EXPECT_THROW(family_strategy(p), std::invalid_argument);
  p = WinningFamilyParams::constant(Rat(1, 2));
  p.p[2] = Rat(5, 4);
  EXPECT_THROW(family_strategy(p), std::invalid_argument);
  EXPECT_THROW(WinningFamilyParams::from_vector(std::vector<Rat>(14, Rat(0))), std::invalid_argument);
}

TEST(Family, VariableOrder) {
  const auto& n = WinningFamilyParams::variable_names();
  EXPECT_EQ(n.front(), "p0");
  EXPECT_EQ(n[3], "p01");
  EXPECT_EQ(n[9], "q01");
  EXPECT_EQ(n.back(), "q21");
  std::vector<Rat> v;
  for (int i = 0; i < 15; ++i) v.push_back(Rat(i, 20));
  EXPECT_EQ(WinningFamilyParams::from_vector(v).to_vector(), v);
}

TEST(Rgb0, Examples) {
  const StrategyTable s = rgb0();
  EXPECT_EQ(s(0, 0, 1, 2), Rat(1));
  EXPECT_EQ(s(0, 2, 1, 0), Rat(1));
}

TEST(Rgrb, Examples) {
  const StrategyTable s = rgrb();
  EXPECT_EQ(s(0, 0, 1, 2), Rat(1, 2));
  EXPECT_EQ(s(0, 1, 1, 0), Rat(0));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      int halves = 0;
      for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) {
          EXPECT_EQ(s(a, b, x, y), oracle::rgrb_entry(a, b, x, y));
          halves += s(a, b, x, y) == Rat(1, 2);
        }
      EXPECT_EQ(halves, 2);
    }
}

TEST(Enumerate, RgbCount) {
  EXPECT_EQ(enumerate_winning_deterministic_boxes(rgb_game()), 5832u);
  EXPECT_EQ(enumerate_winning_deterministic_boxes(rgb_game()), oracle::count_winning(oracle::rgb, 3, 3, 3, 3));
}

TEST(Enumerate, TrivialGames) {
  const Game always = Game::uniform("t", BoxShape::uniform(2), [](int, int, int, int) { return true; });
  EXPECT_EQ(enumerate_winning_deterministic_boxes(always), 256u);
  const Game dead = Game::uniform("d", BoxShape::uniform(2), [](int a, int b, int, int) { return !(a == 1 && b == 1); });
  EXPECT_EQ(enumerate_winning_deterministic_boxes(dead), 0u);
}

TEST(Enumerate, Guard) {
  const Game big = Game::uniform("big", BoxShape::uniform(6), [](int, int, int, int) { return true; });
  EXPECT_THROW(enumerate_winning_deterministic_boxes(big), std::length_error);
  EXPECT_THROW(local_bound(big), std::length_error);
}

TEST(LocalBound, Rgb) {
  const LocalBound b = local_bound(rgb_game());
  EXPECT_EQ(b.value, Rat(8, 9));
  const auto [wins, total] = oracle::local_value(oracle::rgb, 3, 3, 3, 3);
  EXPECT_EQ(b.value, Rat(wins, total));
  EXPECT_EQ(b.fa, (std::vector<int>{1, 0, 0}));
  EXPECT_EQ(b.fb, (std::vector<int>{2, 2, 1}));
  EXPECT_EQ(win_probability(deterministic_strategy(b.fa, b.fb, BoxShape::uniform(3)), rgb_game()), Rat(8, 9));
}

TEST(LocalBound, ChshAndTrivial) {
  EXPECT_EQ(local_bound(chsh_game()).value, Rat(3, 4));
  const auto [wins, total] =
      oracle::local_value([](int a, int b, int x, int y) { return (x ^ y) == (a & b); }, 2, 2, 2, 2);
  EXPECT_EQ(Rat(wins, total), Rat(3, 4));
  const Game always = Game::uniform("t", BoxShape::uniform(2), [](int, int, int, int) { return true; });
  EXPECT_EQ(local_bound(always).value, Rat(1));
}

TEST(Distance, Examples) {
  EXPECT_EQ(l1_distance(rgb0(), rgb0()), Rat(0));
  const Rat d = l1_distance(rgb0(), rgrb());
  EXPECT_GT(d, Rat(0));
  EXPECT_EQ(d, l1_distance(rgrb(), rgb0()));
  const std::vector<StrategyTable> set{rgrb(), rgb0()};
  EXPECT_EQ(l1_distance_to_set(rgb0(), set), Rat(0));
  EXPECT_EQ(l1_distance_to_set(family_strategy(WinningFamilyParams::constant(Rat(1, 2))), set), Rat(0));
  EXPECT_THROW(l1_distance(rgrb(), deterministic_strategy({0, 0}, {0, 0}, BoxShape::uniform(2))),
               std::invalid_argument);
  EXPECT_THROW(l1_distance_to_set(rgrb(), std::vector<StrategyTable>{}), std::invalid_argument);
}

TEST(BoxIo, RoundTripAndCanonicalForm) {
  const std::string text = write_box(rgrb());
  EXPECT_EQ(read_box(text), rgrb());
  EXPECT_EQ(write_box(read_box(text)), text);
  EXPECT_NE(text.find("{\"a\": 0, \"b\": 0, \"x\": 1, \"y\": 2, \"p\": \"1/2\"}"), std::string::npos);
  EXPECT_LT(text.find("\"x\": 1, \"y\": 2"), text.find("\"x\": 2, \"y\": 1"));
}

TEST(BoxIo, Diagnostics) {
  try {
    read_box("{\n\"alphabets\": [3,3,3,3],\n\"table\": [\n");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.where().rfind("line ", 0), 0u) << e.what();
  }
  try {
    read_box(R"({"alphabets": [2,2,2,2], "table": [{"a":0,"b":0,"x":0,"y":0,"p":"1"}, {"a":0,"b":0,"x":0,"y":1,"p":0.5}]})");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.where(), "table[1].p");
  }
  try {
    read_box(R"({"alphabets": [2,2,2,2], "table": [{"a":0,"b":5,"x":0,"y":0,"p":"1"}]})");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.where(), "table[0].b");
  }
  EXPECT_THROW(read_box(R"({"alphabets": [2,2,2], "table": []})"), FormatError);
  // Rows that do not sum to one.
  EXPECT_THROW(read_box(R"({"alphabets": [1,1,2,1], "table": [{"a":0,"b":0,"x":0,"y":0,"p":"1/2"}]})"), FormatError);
}

TEST(BoxIo, RealBoxes) {
  const RealTable r = read_real_box(write_real_box(to_real(rgrb())));
  EXPECT_EQ(r, to_real(rgrb()));
  const RealTable mixed =
      read_real_box(R"({"alphabets": [1,1,2,1], "table": [{"a":0,"b":0,"x":0,"y":0,"p":"1/4"}, {"a":0,"b":0,"x":1,"y":0,"p":0.75}]})");
  EXPECT_DOUBLE_EQ(mixed(0, 0, 1, 0), 0.75);
  EXPECT_EQ(format_decimal(0.1), "0.10000000000000001");
}

TEST(Properties, FamilySoundnessOnRandomParameters) {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 100; ++trial) {
    WinningFamilyParams p = WinningFamilyParams::constant(Rat(0));
    for (int u = 0; u < 3; ++u) p.p[static_cast<std::size_t>(u)] = oracle::random_rat(rng, 64);
    for (auto [u, v] : ordered_pairs()) {
      const Rat a = oracle::random_rat(rng, 64);
      const Rat b = oracle::random_rat(rng, 64) * (Rat(1) - a);
      p.pair[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = a;
      p.q[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = b;
    }
    const StrategyTable s = family_strategy(p);
    EXPECT_EQ(win_probability(s, rgb_game()), Rat(1));
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int x = 0; x < 3; ++x)
          for (int y = 0; y < 3; ++y)
            if (!rgb_predicate(a, b, x, y)) {
              EXPECT_EQ(s(a, b, x, y), Rat(0));
            }
  }
}

TEST(Properties, NoEnumeratedPairBeatsLocalBound) {
  const Game g = rgb_game();
  for (int ia = 0; ia < 27; ++ia)
    for (int ib = 0; ib < 27; ++ib) {
      const std::vector<int> fa{ia / 9, (ia / 3) % 3, ia % 3};
      const std::vector<int> fb{ib / 9, (ib / 3) % 3, ib % 3};
      EXPECT_LE(win_probability(deterministic_strategy(fa, fb, BoxShape::uniform(3)), g), Rat(8, 9));
    }
}

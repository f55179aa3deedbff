#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "mclab/group.hpp"
#include "mclab/rng.hpp"
#include "oracles.hpp"

using namespace mclab;

namespace {

const std::vector<std::vector<int>> kGroups{{8}, {12}, {3, 4}, {2, 2, 5}, {3, 2}, {2, 2, 3}};

FunctionOnG random_f(const FiniteAbelianGroup& g, std::uint64_t stream) {
  CounterRng rng(11, stream);
  return random_function(g, rng);
}

}  // namespace

TEST(Group, OrderAndHaarWeight) {
  for (const auto& factors : kGroups) {
    FiniteAbelianGroup g(factors);
    EXPECT_EQ(g.order(), oracle::order(factors));
    EXPECT_NEAR(g.haar_weight() * static_cast<double>(g.order()), 1.0, 1e-15);
  }
}

TEST(Group, EnumerationIsMixedRadixLastFastest) {
  FiniteAbelianGroup g({3, 4});
  EXPECT_EQ(g.residues(0), (std::vector<int>{0, 0}));
  EXPECT_EQ(g.residues(1), (std::vector<int>{0, 1}));
  EXPECT_EQ(g.residues(4), (std::vector<int>{1, 0}));
  EXPECT_EQ(g.residues(11), (std::vector<int>{2, 3}));
  for (std::size_t i = 0; i < g.order(); ++i) EXPECT_EQ(g.index_of(g.residues(i)), i);
  EXPECT_EQ(g.index_of({-1, 5}), g.index_of({2, 1}));
}

TEST(Group, ArithmeticMatchesResidues) {
  for (const auto& factors : kGroups) {
    FiniteAbelianGroup g(factors);
    for (std::size_t a = 0; a < g.order(); ++a) {
      EXPECT_EQ(g.add(a, g.negate(a)), 0u);
      for (std::size_t b = 0; b < g.order(); ++b) {
        EXPECT_EQ(g.subtract(a, b), oracle::subtract(factors, a, b));
        EXPECT_EQ(g.add(a, b), g.add(b, a));
      }
    }
  }
}

TEST(Group, ParseLiteral) {
  EXPECT_EQ(parse_group("3,4"), FiniteAbelianGroup({3, 4}));
  EXPECT_EQ(parse_group(" 8 "), FiniteAbelianGroup({8}));
  EXPECT_EQ(parse_group("2, 2,5").to_string(), "2,2,5");
  for (const char* bad : {"", "3,", ",4", "3,x", "1", "0,4", "-3", "3;4", "2.5"}) {
    EXPECT_THROW(parse_group(bad), std::invalid_argument) << bad;
  }
  EXPECT_THROW(FiniteAbelianGroup(std::vector<int>{}), std::invalid_argument);
}

TEST(Group, ElementsCarryTheirGroup) {
  FiniteAbelianGroup g({3, 4});
  GroupElement x(g, std::vector<int>{2, 3}), y(g, std::vector<int>{2, 2});
  EXPECT_EQ((x + y).residues(), (std::vector<int>{1, 1}));
  EXPECT_EQ((x - y).residues(), (std::vector<int>{0, 1}));
  EXPECT_EQ((-x).residues(), (std::vector<int>{1, 1}));
  EXPECT_THROW(GroupElement(g, 12), std::out_of_range);
  GroupElement other(FiniteAbelianGroup({12}), 0);
  EXPECT_THROW(x + other, std::invalid_argument);
}

TEST(Pairing, Examples) {
  FiniteAbelianGroup z4({4});
  EXPECT_NEAR(std::abs(pairing(GroupElement(z4, 1), GroupElement(z4, 1)) - complex(0, 1)), 0.0, 1e-15);

  FiniteAbelianGroup z32({3, 2});
  const complex expected = std::polar(1.0, 2.0 * std::numbers::pi * 7.0 / 6.0);
  const complex got = pairing(GroupElement(z32, std::vector<int>{1, 1}), GroupElement(z32, std::vector<int>{2, 1}));
  EXPECT_NEAR(std::abs(got - expected), 0.0, 1e-15);

  for (const auto& factors : kGroups) {
    FiniteAbelianGroup g(factors);
    for (std::size_t m = 0; m < g.order(); ++m) EXPECT_EQ(pairing(g, 0, m), complex(1.0, 0.0));
  }
}

TEST(Pairing, MatchesOracleAndIsABicharacter) {
  for (const auto& factors : kGroups) {
    FiniteAbelianGroup g(factors);
    for (std::size_t x = 0; x < g.order(); ++x) {
      for (std::size_t m = 0; m < g.order(); ++m) {
        const complex v = pairing(g, x, m);
        EXPECT_NEAR(std::abs(v), 1.0, 1e-15);
        EXPECT_NEAR(std::abs(v - oracle::character_value(factors, x, m)), 0.0, 1e-14);
        EXPECT_NEAR(std::abs(v - pairing(g, m, x)), 0.0, 1e-15);
        for (std::size_t y = 0; y < g.order(); y += 3) {
          EXPECT_NEAR(std::abs(pairing(g, g.add(x, y), m) - v * pairing(g, y, m)), 0.0, 1e-13);
        }
      }
    }
  }
}

TEST(Translate, Examples) {
  FiniteAbelianGroup z4({4});
  EXPECT_EQ(translate(point_indicator(z4, 0), 1).values(), point_indicator(z4, 1).values());
  for (const auto& factors : kGroups) {
    FiniteAbelianGroup g(factors);
    const auto f = random_f(g, 1);
    EXPECT_EQ(translate(f, 0).values(), f.values());
    for (std::size_t m = 0; m < g.order(); ++m) {
      for (std::size_t y = 0; y < g.order(); ++y) {
        const auto lhs = translate(character(g, m), y);
        const auto rhs = pairing(g, g.negate(y), m) * character(g, m);
        EXPECT_LE(max_abs_diff(lhs, rhs), 1e-13);
      }
    }
  }
}

TEST(Translate, IsAGroupAction) {
  for (const auto& factors : kGroups) {
    FiniteAbelianGroup g(factors);
    const auto f = random_f(g, 2);
    for (std::size_t y = 0; y < g.order(); ++y) {
      const auto ty = translate(f, y);
      for (std::size_t x = 0; x < g.order(); ++x) EXPECT_EQ(ty[x], f[g.subtract(x, y)]);
      EXPECT_EQ(translate(ty, g.negate(y)).values(), f.values());
    }
  }
}

TEST(Reflect, Examples) {
  FiniteAbelianGroup z4({4});
  EXPECT_EQ(reflect(point_indicator(z4, 1)).values(), point_indicator(z4, 3).values());
  for (const auto& factors : kGroups) {
    FiniteAbelianGroup g(factors);
    EXPECT_EQ(reflect(constant_function(g, 1.0)).values(), constant_function(g, 1.0).values());
    for (std::size_t m = 0; m < g.order(); ++m) {
      EXPECT_LE(max_abs_diff(reflect(character(g, m)), character(g, g.negate(m))), 1e-14);
    }
    const auto f = random_f(g, 3);
    EXPECT_EQ(reflect(reflect(f)).values(), f.values());
  }
}

TEST(Natural, Examples) {
  FiniteAbelianGroup z4({4});
  const auto f = complex(0, 1) * point_indicator(z4, 1);
  EXPECT_EQ(natural(f).values(), (complex(0, -1) * point_indicator(z4, 3)).values());
  for (const auto& factors : kGroups) {
    FiniteAbelianGroup g(factors);
    EXPECT_EQ(natural(constant_function(g, 1.0)).values(), constant_function(g, 1.0).values());
    for (std::size_t m = 0; m < g.order(); ++m) EXPECT_LE(max_abs_diff(natural(character(g, m)), character(g, m)), 1e-14);
    const auto h = random_f(g, 4);
    EXPECT_EQ(natural(natural(h)).values(), h.values());
    // Conjugate linear.
    const complex c(0.3, -1.7);
    EXPECT_LE(max_abs_diff(natural(c * h), std::conj(c) * natural(h)), 1e-15);
  }
}

TEST(Integrate, Examples) {
  for (const auto& factors : kGroups) {
    FiniteAbelianGroup g(factors);
    EXPECT_NEAR(std::abs(integrate(constant_function(g, 1.0)) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(integrate(point_indicator(g, g.order() - 1)) - g.haar_weight()), 0.0, 1e-15);
    for (std::size_t m = 1; m < g.order(); ++m) EXPECT_LE(std::abs(integrate(character(g, m))), 1e-14);
    const auto f = random_f(g, 5);
    for (std::size_t y = 0; y < g.order(); ++y) {
      EXPECT_NEAR(std::abs(integrate(translate(f, y)) - integrate(f)), 0.0, 1e-14);
    }
  }
}

TEST(IndexedValues, GroupMismatchThrows) {
  FunctionOnG a(FiniteAbelianGroup({4})), b(FiniteAbelianGroup({2, 2}));
  EXPECT_THROW(a + b, std::invalid_argument);
  EXPECT_THROW(FunctionOnG(FiniteAbelianGroup({4}), std::vector<complex>(3)), std::invalid_argument);
  EXPECT_THROW(indicator(FiniteAbelianGroup({4}), {4}), std::out_of_range);
}

TEST(CounterRng, SplitmixFinalizerReferenceValue) {
  // First output of the reference splitmix64 generator seeded with 0.
  EXPECT_EQ(splitmix64(0x9E3779B97F4A7C15ULL), 0xE220A8397B1DCDAFULL);
}

TEST(CounterRng, PinnedStreams) {
  CounterRng a(42, 7);
  EXPECT_EQ(a(), 0xb1d031fb3d144310ULL);
  EXPECT_EQ(a(), 0x74d5bf8096abbf87ULL);
  EXPECT_EQ(a(), 0xccac3bc322b69d15ULL);
  CounterRng b(0, 0);
  EXPECT_EQ(b(), 0x83318a9282400131ULL);
  EXPECT_EQ(b(), 0xd247d3921df91bd3ULL);
}

TEST(CounterRng, StreamsAreIndependentOfOrder) {
  std::set<std::uint64_t> firsts;
  for (std::uint64_t s = 0; s < 1000; ++s) firsts.insert(CounterRng(5, s)());
  EXPECT_EQ(firsts.size(), 1000u);
  CounterRng x(9, 3), y(9, 3);
  for (int i = 0; i < 10; ++i) (void)x();
  for (int i = 0; i < 10; ++i) (void)y();
  EXPECT_EQ(x(), y());
}

TEST(CounterRng, RangesAndMoments) {
  CounterRng rng(3, 1);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 5e-3);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_LT(rng.below(7), 7u);
    const complex z = rng.polar(0.1, 1.0);
    EXPECT_GE(std::abs(z), 0.1 - 1e-15);
    EXPECT_LT(std::abs(z), 1.0 + 1e-15);
  }
}

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "reclab/expr.hpp"
#include "reclab/intset.hpp"

using namespace reclab;

TEST(IntSet, CanonicalFormDropsZeroAndDuplicates) {
  const IntSet s{5, 0, -2, 5, 3};
  EXPECT_EQ(s.elements(), (std::vector<std::int64_t>{-2, 3, 5}));
  EXPECT_FALSE(s.contains(0));
  EXPECT_EQ(IntSet({0}).size(), 0u);
  EXPECT_THROW((void)IntSet{}.min(), EmptyInput);
}

TEST(IntSet, SetAlgebra) {
  const IntSet a{1, 2, 3, 7}, b{2, 7, 9};
  EXPECT_EQ(a.without(b), (IntSet{1, 3}));
  EXPECT_EQ(a.united(b), (IntSet{1, 2, 3, 7, 9}));
  EXPECT_TRUE((IntSet{2, 7}).is_subset_of(a));
  EXPECT_EQ((IntSet{-3, 2, 3}).absolute(), (IntSet{2, 3}));
  EXPECT_EQ((IntSet{-3, 2, 3}).positive_part(), (IntSet{2, 3}));
  EXPECT_EQ(a.restricted(Window{2, 5}), (IntSet{2, 3}));
  EXPECT_TRUE(a.restricted(Window{5, 4}).empty());
}

TEST(DifferenceSet, ListedExamples) {
  const std::vector<std::int64_t> ap{0, 3, 6};
  EXPECT_EQ(difference_set(std::span<const std::int64_t>(ap)), (IntSet{-6, -3, 3, 6}));
  EXPECT_EQ(difference_set(IntSet{1, 2}), (IntSet{-1, 1}));

  std::vector<std::int64_t> threes;
  for (std::int64_t n = 0; n <= 60; n += 3) threes.push_back(n);
  const IntSet d = difference_set(std::span<const std::int64_t>(threes), Window{0, 60});
  EXPECT_EQ(d.max(), 60);
  for (auto x : d) EXPECT_EQ(x % 3, 0);
}

TEST(DifferenceSet, EmptyInputIsAnError) {
  EXPECT_THROW(difference_set(IntSet{}), EmptyInput);
  const std::vector<std::int64_t> none;
  EXPECT_THROW(difference_set(std::span<const std::int64_t>(none)), EmptyInput);
}

TEST(DifferenceSet, MatchesBruteForceAndLaws) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<std::int64_t> raw;
    const int n = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) raw.push_back(static_cast<std::int64_t>(rng() % 41) - 20);
    const IntSet s(raw);
    if (s.empty()) continue;
    const IntSet d = difference_set(s);
    EXPECT_EQ(d.elements(), oracle::differences(s.elements()));
    for (auto x : d) EXPECT_TRUE(d.contains(-x));
    EXPECT_FALSE(d.contains(0));
    if (s.size() > 1) {
      EXPECT_TRUE(difference_set(s.without(s.max())).is_subset_of(d));
    }
  }
}

TEST(SyndeticGap, Examples) {
  std::vector<std::int64_t> threes;
  for (std::int64_t n = -60; n <= 60; n += 3) threes.push_back(n);
  EXPECT_EQ(syndetic_gap(IntSet(threes), Window{1, 30}).max_gap, 3);

  std::vector<std::int64_t> pow2;
  for (std::int64_t p = 1; p <= 1024; p *= 2) pow2.push_back(p);
  const auto g = syndetic_gap(IntSet(pow2), Window{1, 1024});
  EXPECT_EQ(g.max_gap, 512);
  EXPECT_EQ(g.gaps.front(), 1);
}

TEST(SyndeticGap, GoldenBohrSetHasGapsAtMostFour) {
  const oracle::Float a = oracle::golden();
  std::vector<std::int64_t> s;
  for (std::int64_t n = 1; n <= 200; ++n)
    if (oracle::norm(a * n) < oracle::Float(1) / 4) s.push_back(n);
  const auto g = syndetic_gap(IntSet(s), Window{1, 200});
  EXPECT_LE(g.max_gap, 4);
  EXPECT_EQ(g.max_gap, 3);  // frozen from the 100-digit oracle
}

TEST(SyndeticGap, OneSidedIgnoresNegativePart) {
  const IntSet s{-50, -1, 4, 6};
  EXPECT_EQ(syndetic_gap(s, Window{-50, 10}).max_gap, 49);
  EXPECT_EQ(syndetic_gap(s, Window{-50, 10}, GapSide::one_sided).max_gap, 2);
}

TEST(SyndeticGap, ErrorsAndSingleElement) {
  EXPECT_THROW(syndetic_gap(IntSet{100}, Window{1, 10}), NoElementsInWindow);
  EXPECT_EQ(syndetic_gap(IntSet{5}, Window{1, 10}).max_gap, 10);
}

TEST(SyndeticGap, SmallGapForcesSmallDifference) {
  const IntSet s{3, 8, 10, 17};
  const auto g = syndetic_gap(s, Window{1, 20});
  const IntSet d = difference_set(s.restricted(Window{1, 20}));
  EXPECT_TRUE(std::ranges::any_of(d, [&](std::int64_t x) { return std::abs(x) <= g.max_gap; }));
}

TEST(Thick, Examples) {
  EXPECT_TRUE(is_thick_window(IntSet{5, 6, 7, 8}, 4, Window{0, 10}));
  std::vector<std::int64_t> evens;
  for (std::int64_t n = -100; n <= 100; n += 2) evens.push_back(n);
  EXPECT_FALSE(is_thick_window(IntSet(evens), 2, Window{-100, 100}));

  std::vector<std::int64_t> blocks;
  for (std::int64_t n = 1; n <= 10000; ++n)
    if (static_cast<int>(std::floor(std::log2(static_cast<double>(n)))) % 2 == 0) blocks.push_back(n);
  EXPECT_TRUE(is_thick_window(IntSet(blocks), 100, Window{1, 10000}));
  EXPECT_THROW(is_thick_window(IntSet{1}, 0, Window{0, 1}), InvalidArgument);
}

TEST(Thick, RunMustLieInsideWindow) {
  EXPECT_FALSE(is_thick_window(IntSet{5, 6, 7, 8}, 4, Window{6, 10}));
}

TEST(Lacunarity, Examples) {
  std::vector<std::int64_t> pow2;
  for (std::int64_t k = 0; k <= 10; ++k) pow2.push_back(std::int64_t{1} << k);
  const auto a = lacunarity_ratios(IntSet(pow2));
  EXPECT_EQ(a.min_ratio, Rational(2));
  EXPECT_TRUE(a.is_lacunary_at_scale);

  EXPECT_EQ(lacunarity_ratios(gen_L_r(3, 2)).min_ratio, Rational(3, 2));

  const auto c = lacunarity_ratios(IntSet{1, 2, 3, 4});
  EXPECT_EQ(c.min_ratio, Rational(4, 3));
  EXPECT_EQ(c.argmin, 2u);
  EXPECT_TRUE(c.is_lacunary_at_scale);
}

TEST(Lacunarity, NeedsTwoPositiveElements) {
  EXPECT_THROW(lacunarity_ratios(IntSet{-4, -2, 5}), TooFewElements);
}

TEST(Families, KTimesNr) {
  EXPECT_EQ(gen_k_times_Nr(2, 3), (IntSet{2, 4, 6}));
  EXPECT_EQ(gen_k_times_Nr(1, 1), (IntSet{1}));
  EXPECT_EQ(gen_k_times_Nr(5, 4), (IntSet{5, 10, 15, 20}));
  EXPECT_THROW(gen_k_times_Nr(0, 3), InvalidArgument);
}

TEST(Families, LayeredLacunary) {
  EXPECT_EQ(gen_L_r(2, 2), (IntSet{1, 2, 4, 8, 16, 32}));
  EXPECT_EQ(gen_L_r(3, 0), (IntSet{1, 2, 3}));
  EXPECT_EQ(gen_L_r(3, 1), (IntSet{1, 2, 3, 5, 10, 15}));
  EXPECT_THROW(gen_L_r(1, 2), InvalidArgument);
}

TEST(Families, LayeredLaws) {
  for (std::int64_t r = 2; r <= 6; ++r) {
    for (std::int64_t k = 0; k <= 4; ++k) {
      const IntSet s = gen_L_r(r, k);
      EXPECT_EQ(s.size(), static_cast<std::size_t>(r * (k + 1)));
      EXPECT_TRUE(s.is_subset_of(gen_L_r(r, k + 1)));
      if (k >= 1) {
        EXPECT_EQ(lacunarity_ratios(s).min_ratio, Rational(r, r - 1));
      }
    }
  }
}

TEST(Families, Polynomials) {
  auto poly = [](const char* text) { return *Expression::parse(text).as_polynomial(); };
  EXPECT_EQ(gen_polynomial(poly("n^2"), 4), (IntSet{1, 4, 9, 16}));
  EXPECT_EQ(gen_polynomial(poly("n^2+1"), 3), (IntSet{2, 5, 10}));
  EXPECT_EQ(gen_polynomial(poly("n*(n+1)/2"), 4), (IntSet{1, 3, 6, 10}));
}

TEST(Overflow, CheckedArithmeticThrows) {
  EXPECT_THROW(checked_mul(INT64_MAX, 2), Overflow);
  EXPECT_THROW(checked_add(INT64_MAX, 1), Overflow);
  EXPECT_THROW(checked_abs(INT64_MIN), Overflow);
  EXPECT_THROW(gen_L_r(2, 40), Overflow);
}

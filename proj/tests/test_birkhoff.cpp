#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "reclab/birkhoff.hpp"

using namespace reclab;

namespace {

std::vector<int> colors_of(const Verdict& v) {
  return std::get<PeriodicWitness>(*v.certificate).coloring.colors;
}

std::int64_t window_of(const Verdict& v) { return std::get<WindowUnsat>(*v.certificate).window; }

// Every non-undecided verdict carries a certificate of the matching kind that re-verifies.
void expect_sound(const IntSet& m, int r, const Verdict& v) {
  switch (v.status) {
    case Status::r_birkhoff:
      ASSERT_TRUE(v.certificate && std::holds_alternative<WindowUnsat>(*v.certificate));
      EXPECT_TRUE(verify_certificate(m, r, *v.certificate));
      break;
    case Status::not_r_birkhoff:
      ASSERT_TRUE(v.certificate && std::holds_alternative<PeriodicWitness>(*v.certificate));
      EXPECT_TRUE(verify_certificate(m, r, *v.certificate));
      break;
    case Status::undecided:
      EXPECT_FALSE(v.certificate.has_value());
      break;
  }
}

IntSet random_set(std::mt19937_64& rng, int size, int max_elem) {
  std::vector<std::int64_t> v;
  while (static_cast<int>(IntSet(v).size()) < size) v.push_back(1 + static_cast<std::int64_t>(rng() % max_elem));
  return IntSet(v);
}

}  // namespace

TEST(CheckRBirkhoff, ArithmeticProgressionExamples) {
  const IntSet m{2, 4, 6};
  const Verdict three = check_r_birkhoff(m, 3);
  ASSERT_EQ(three.status, Status::r_birkhoff);
  EXPECT_LE(window_of(three), 7);
  EXPECT_EQ(window_of(three), oracle::least_unsat_window(m.elements(), 3, 10));
  expect_sound(m, 3, three);

  const Verdict four = check_r_birkhoff(m, 4);
  ASSERT_EQ(four.status, Status::not_r_birkhoff);
  expect_sound(m, 4, four);
  EXPECT_TRUE(oracle::periodic_valid(colors_of(four), m.elements()));
  EXPECT_EQ(colors_of(four), (std::vector<int>{1, 1, 2, 2, 3, 3, 4, 4}));
}

TEST(CheckRBirkhoff, LayeredFamilyExamples) {
  const IntSet l2 = gen_L_r(2, 2);
  const Verdict v3 = check_r_birkhoff(l2, 3);
  ASSERT_EQ(v3.status, Status::not_r_birkhoff);
  EXPECT_EQ(colors_of(v3), (std::vector<int>{1, 2, 3}));

  const Verdict v2 = check_r_birkhoff(l2, 2);
  ASSERT_EQ(v2.status, Status::r_birkhoff);
  EXPECT_EQ(window_of(v2), 3);
}

TEST(CheckRBirkhoff, NegativeElementsAreSymmetrized) {
  const Verdict a = check_r_birkhoff(IntSet{-2, 4, -6}, 3);
  const Verdict b = check_r_birkhoff(IntSet{2, 4, 6}, 3);
  EXPECT_EQ(a.status, b.status);
  EXPECT_EQ(a.certificate, b.certificate);
}

TEST(CheckRBirkhoff, Errors) {
  EXPECT_THROW(check_r_birkhoff(IntSet{1}, 0), InvalidArity);
  EXPECT_THROW(check_r_birkhoff(IntSet{}, 2), EmptyInput);
}

TEST(CheckRBirkhoff, StarvedBudgetIsUndecidedNeverWrong) {
  SolverLimits tiny;
  tiny.node_budget = 10;
  tiny.greedy_fallback = false;
  std::mt19937_64 rng(3);
  int undecided = 0;
  for (int i = 0; i < 30; ++i) {
    const IntSet m = random_set(rng, 1 + static_cast<int>(rng() % 4), 40);
    const int r = 1 + static_cast<int>(rng() % 4);
    const Verdict v = check_r_birkhoff(m, r, tiny);
    expect_sound(m, r, v);
    const Verdict full = check_r_birkhoff(m, r);
    if (v.status == Status::undecided) {
      ++undecided;
      EXPECT_TRUE(v.stats.budget_exhausted);
    } else {
      EXPECT_EQ(v.status, full.status);
    }
  }
  EXPECT_GT(undecided, 0);
}

TEST(CheckRBirkhoff, AgreesWithExhaustiveWindowSearch) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 40; ++i) {
    const IntSet m = random_set(rng, 1 + static_cast<int>(rng() % 3), 9);
    const int r = 2 + static_cast<int>(rng() % 2);
    const Verdict v = check_r_birkhoff(m, r);
    expect_sound(m, r, v);
    if (v.status == Status::r_birkhoff) {
      EXPECT_EQ(window_of(v), oracle::least_unsat_window(m.elements(), r, 40)) << m.to_string();
    }
    if (v.status == Status::not_r_birkhoff) {
      EXPECT_TRUE(oracle::periodic_valid(colors_of(v), m.elements()));
      EXPECT_EQ(oracle::least_unsat_window(m.elements(), r, 14), -1) << m.to_string();
    }
  }
}

TEST(CheckRBirkhoff, WitnessIsCanonical) {
  // Least period first, then the lexicographically least colors of that period.
  std::mt19937_64 rng(5);
  for (int i = 0; i < 25; ++i) {
    const IntSet m = random_set(rng, 1 + static_cast<int>(rng() % 2), 8);
    const Verdict v = check_r_birkhoff(m, 3);
    if (v.status != Status::not_r_birkhoff) continue;
    const auto got = colors_of(v);
    const int p = static_cast<int>(got.size());
    // exhaustive over all 3-colorings of every period <= p
    std::optional<std::vector<int>> best;
    for (int q = 1; q <= p && !best; ++q) {
      std::vector<int> c(static_cast<std::size_t>(q), 1);
      for (;;) {
        if (oracle::periodic_valid(c, m.elements())) {
          best = c;
          break;
        }
        int k = q - 1;
        while (k >= 0 && c[static_cast<std::size_t>(k)] == 3) c[static_cast<std::size_t>(k--)] = 1;
        if (k < 0) break;
        ++c[static_cast<std::size_t>(k)];
      }
    }
    ASSERT_TRUE(best.has_value());
    EXPECT_EQ(got, *best) << m.to_string();
  }
}

TEST(CheckRBirkhoff, MonotoneInWindowSubsetAndArity) {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 20; ++i) {
    const IntSet m = random_set(rng, 2 + static_cast<int>(rng() % 2), 12);
    const Verdict v = check_r_birkhoff(m, 2);
    if (v.status == Status::r_birkhoff) {
      const auto w = window_of(v);
      for (std::int64_t extra = 1; extra <= 3; ++extra)
        EXPECT_FALSE(oracle::window_colorable(static_cast<int>(w + extra), m.elements(), 2));
      // adding an element never downgrades
      const IntSet bigger = m.united(IntSet{m.max() + 1 + static_cast<std::int64_t>(rng() % 5)});
      EXPECT_EQ(check_r_birkhoff(bigger, 2).status, Status::r_birkhoff);
      // arity monotonicity: Bir_{r+1} within Bir_r
      EXPECT_EQ(check_r_birkhoff(m, 1).status, Status::r_birkhoff);
    }
    const Verdict v3 = check_r_birkhoff(m, 3);
    if (v3.status == Status::r_birkhoff) {
      EXPECT_EQ(v.status, Status::r_birkhoff);
    }
  }
}

TEST(VerifyCertificate, Examples) {
  const PeriodicColoring floor_half{{1, 1, 2, 2, 3, 3, 4, 4}};
  EXPECT_TRUE(verify_certificate(IntSet{2, 4, 6}, 4, PeriodicWitness{floor_half}));
  EXPECT_FALSE(verify_certificate(IntSet{3}, 2, PeriodicWitness{{{1, 2, 1}}}));
  EXPECT_TRUE(verify_certificate(IntSet{1}, 1, WindowUnsat{2, 1}));
}

TEST(VerifyCertificate, RejectsWrongOrMalformed) {
  EXPECT_FALSE(verify_certificate(IntSet{1, 2}, 2, WindowUnsat{2, 2}));  // 2 vertices are 2-colorable
  EXPECT_FALSE(verify_certificate(IntSet{1, 2}, 3, WindowUnsat{3, 2}));  // arity mismatch
  EXPECT_THROW(verify_certificate(IntSet{1}, 2, WindowUnsat{0, 2}), MalformedCertificate);
  EXPECT_THROW(verify_certificate(IntSet{1}, 2, PeriodicWitness{{{1, 3}}}), MalformedCertificate);
  EXPECT_THROW(verify_certificate(IntSet{1}, 2, PeriodicWitness{{{}}}), MalformedCertificate);
  EXPECT_THROW(verify_certificate(IntSet{1}, 0, WindowUnsat{2, 1}), InvalidArity);
}

TEST(Greedy, Examples) {
  const auto one = greedy_coloring(IntSet{1}, 2, 6);
  EXPECT_EQ(one.sequence, (std::vector<int>{2, 1, 2, 1, 2, 1}));
  EXPECT_EQ(one.sequence, oracle::greedy({1}, 2, 6));

  const auto two = greedy_coloring(IntSet{1, 2}, 3, 8);
  EXPECT_EQ(two.sequence, oracle::greedy({1, 2}, 3, 8));
  for (std::size_t i = 0; i + 2 < two.sequence.size(); ++i) {
    EXPECT_NE(two.sequence[i], two.sequence[i + 1]);
    EXPECT_NE(two.sequence[i], two.sequence[i + 2]);
  }

  const auto ap = greedy_coloring(IntSet{2, 4, 6}, 4, 20);
  ASSERT_TRUE(ap.cycle.has_value());
  EXPECT_TRUE(verify_certificate(IntSet{2, 4, 6}, 4, PeriodicWitness{*ap.cycle}));
}

TEST(Greedy, CycleReproducesTail) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 30; ++i) {
    const int r = 1 + static_cast<int>(rng() % 5);
    const IntSet m = random_set(rng, r, 30);
    const auto g = greedy_coloring(m, r + 1, 600);
    EXPECT_EQ(g.sequence, oracle::greedy(m.elements(), r + 1, 600));
    ASSERT_TRUE(g.cycle.has_value());
    EXPECT_TRUE(verify_certificate(m, r + 1, PeriodicWitness{*g.cycle}));
    for (std::int64_t t = std::max<std::int64_t>(g.cycle_start, 1); t <= 600; ++t)
      EXPECT_EQ(g.sequence[static_cast<std::size_t>(t - 1)], g.cycle->color_at(t));
  }
}

TEST(Greedy, NeedsMoreColorsThanDistances) {
  EXPECT_THROW(greedy_coloring(IntSet{1, 2}, 2, 5), InvalidArity);
}

TEST(MinimalSubset, Examples) {
  EXPECT_EQ(minimal_r_birkhoff_subset(IntSet{2, 4, 6}, 3).subset, (IntSet{2, 4, 6}));
  const auto m = minimal_r_birkhoff_subset(IntSet{1, 2, 3, 7}, 2);
  EXPECT_EQ(m.status, Status::r_birkhoff);
  EXPECT_GE(m.subset.size(), 2u);
  EXPECT_TRUE(m.subset.is_subset_of(IntSet{1, 2, 3, 7}));
  EXPECT_TRUE(verify_certificate(m.subset, 2, *m.certificate));
  for (auto e : m.subset)
    EXPECT_NE(check_r_birkhoff(m.subset.without(e), 2).status, Status::r_birkhoff);
  EXPECT_EQ(minimal_r_birkhoff_subset(IntSet{1}, 1).subset, (IntSet{1}));
  EXPECT_THROW(minimal_r_birkhoff_subset(IntSet{2, 4, 6}, 4), InvalidArgument);
}

TEST(StableProbe, Examples) {
  const auto a = stably_r_birkhoff_probe(2, 2, IntSet{1, 2}, 1);
  EXPECT_EQ(a.verdict.status, Status::r_birkhoff);
  EXPECT_EQ(a.intact_layer, std::optional<std::int64_t>(1));
  EXPECT_TRUE(verify_certificate(a.probed, 2, *a.verdict.certificate));

  const auto b = stably_r_birkhoff_probe(3, 3, IntSet{}, 0);
  EXPECT_EQ(b.verdict.status, Status::r_birkhoff);

  const auto c = stably_r_birkhoff_probe(2, 3, IntSet{}, 3);
  ASSERT_EQ(c.verdict.status, Status::not_r_birkhoff);
  EXPECT_EQ(colors_of(c.verdict), (std::vector<int>{1, 2, 3}));
}

TEST(StableProbe, LayerShortcutCertificatesVerify) {
  for (std::int64_t r = 2; r <= 4; ++r) {
    for (std::int64_t layer = 0; layer <= 2; ++layer) {
      const auto res = stably_r_birkhoff_probe(r, static_cast<int>(r), L_r_layer(r, layer), 2);
      ASSERT_EQ(res.verdict.status, Status::r_birkhoff);
      EXPECT_TRUE(verify_certificate(res.probed, static_cast<int>(r), *res.verdict.certificate));
    }
  }
}

TEST(Chromatic, Examples) {
  const auto path = chromatic_number_window(IntSet{1}, 10);
  EXPECT_EQ(path.lower, 2);
  EXPECT_EQ(path.upper, 2);
  const auto ap = chromatic_number_window(IntSet{2, 4, 6}, 7);
  EXPECT_EQ(ap.lower, 4);
  EXPECT_EQ(ap.upper, 4);
  const auto tri = chromatic_number_window(IntSet{1, 2}, 9);
  EXPECT_EQ(tri.lower, 3);
  EXPECT_EQ(tri.upper, 3);
  EXPECT_THROW(chromatic_number_window(IntSet{1}, 0), InvalidArgument);
}

TEST(Chromatic, StarvedBracketStillBrackets) {
  SolverLimits tiny;
  tiny.node_budget = 1;
  const auto b = chromatic_number_window(IntSet{1, 2, 3, 5, 8}, 40, tiny);
  const auto exact = chromatic_number_window(IntSet{1, 2, 3, 5, 8}, 40);
  EXPECT_LE(b.lower, exact.lower);
  EXPECT_GE(b.upper, exact.upper);
}

TEST(DistanceGraph, EdgeCountFormula) {
  const IntSet m{1, 3, 7};
  for (std::int64_t w = 1; w <= 12; ++w) {
    const DistanceGraph g(w, m);
    std::int64_t pairs = 0, listed = 0;
    for (std::int64_t i = 0; i < w; ++i)
      for (std::int64_t j = i + 1; j < w; ++j)
        if (m.contains(j - i)) ++pairs;
    for (const auto& nb : g.adjacency()) listed += static_cast<std::int64_t>(nb.size());
    EXPECT_EQ(g.edge_count(), pairs);
    EXPECT_EQ(listed, 2 * pairs);
  }
}

#include <gtest/gtest.h>

#include "reclab/claims.hpp"

using namespace reclab;

TEST(Claims, DefaultRunPassesEveryClaimOnce) {
  const PaperReport rep = report_paper_claims();
  ASSERT_EQ(rep.claims.size(), 10u);
  for (std::size_t i = 0; i < rep.claims.size(); ++i) {
    EXPECT_EQ(rep.claims[i].id, static_cast<int>(i + 1));
    EXPECT_EQ(rep.claims[i].status, ClaimStatus::pass) << rep.claims[i].name;
  }
  EXPECT_TRUE(rep.all_pass());
  EXPECT_FALSE(rep.any_fail());
}

TEST(Claims, StarvedBudgetNeverFails) {
  ClaimOptions o;
  o.limits.node_budget = 10;
  o.run_starvation = false;
  const PaperReport rep = report_paper_claims(o);
  EXPECT_FALSE(rep.any_fail());
  const auto undecided = std::ranges::count_if(rep.claims, [](const ClaimResult& c) {
    return c.status == ClaimStatus::undecided;
  });
  EXPECT_GT(undecided, 0);
}

TEST(Claims, InjectedCorruptionIsFlagged) {
  ClaimOptions o;
  o.inject_corrupt = true;
  const PaperReport rep = report_paper_claims(o);
  EXPECT_EQ(rep.claims[2].status, ClaimStatus::fail);
  EXPECT_EQ(rep.claims[9].status, ClaimStatus::pass);
  EXPECT_TRUE(rep.any_fail());
}

TEST(Claims, SeedChangesSamplesNotVerdicts) {
  ClaimOptions o;
  o.seed = 12345;
  o.run_starvation = false;
  EXPECT_TRUE(report_paper_claims(o).all_pass());
}

TEST(Claims, CertificateDescriptions) {
  EXPECT_EQ(describe(WindowUnsat{7, 3}), "window_unsat W=7 r=3");
  EXPECT_EQ(describe(PeriodicWitness{{{1, 2, 3}}}), "periodic p=3 (1,2,3)");
}

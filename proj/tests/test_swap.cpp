#include <gtest/gtest.h>

#include "roommates/checks.hpp"
#include "roommates/generators.hpp"
#include "roommates/oracle.hpp"
#include "roommates/swapping.hpp"
#include "support/bridge.hpp"

using namespace roommates;

TEST(Swapping, Table11Rejected) {
  const Instance inst = support::load("table11");
  try {
    swapping(inst, Assignment::identity(4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotBinarySymmetric);
  }
  const auto mu = Assignment::identity(4);
  EXPECT_TRUE(is_2ps_blocking(inst, mu, 0, 2));
  EXPECT_EQ(social_welfare(inst, swap_agents(mu, 0, 2)) - social_welfare(inst, mu), -2);
}

TEST(Swapping, RandomBinarySymmetric) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const int m = 4 + 2 * static_cast<int>(seed % 4);
    const Instance inst = gen_binary_symmetric(m, 0.5, 0.5, seed);
    const auto r = swapping(inst, Assignment::identity(m));
    EXPECT_LE(r.trace.steps.size(), static_cast<std::size_t>(m));
    for (const auto& s : r.trace.steps) {
      EXPECT_GE(s.sw_after - s.sw_before, 2);
      EXPECT_GE(*s.slack, 2);
    }
    EXPECT_TRUE(is_stable(inst, r.assignment, StabilityKind::TwoPerson));
  }
}

TEST(Swapping, SlackIsSwappersGain) {
  const Instance inst = support::load("swap_non_sp");
  const auto mu = Assignment::identity(6);
  for (const auto& p : blocking_pairs(inst, mu, StabilityKind::TwoPerson).pairs)
    EXPECT_EQ(swap_slack(inst, mu, p.i, p.j), p.delta_i + p.delta_j);
}

TEST(Swapping, NonParetoFixture) {
  const Instance inst = support::load("swap_non_po");
  const auto r = swapping(inst, Assignment::identity(4));
  EXPECT_EQ(r.assignment, Assignment::identity(4));
  EXPECT_FALSE(is_pareto_optimal(inst, r.assignment));
}

TEST(Swapping, RulesPickDifferentFirstSwaps) {
  const Instance inst = support::load("swap_non_sp");
  const auto lex = swapping(inst, Assignment::identity(6));
  ASSERT_FALSE(lex.trace.steps.empty());
  EXPECT_EQ(lex.trace.steps[0].participants, (std::vector<AgentId>{0, 2}));
  const auto sd = swapping(inst, Assignment::identity(6), sd_order_pair_rule({3, 1, 0, 2, 4, 5}));
  EXPECT_EQ(sd.trace.steps[0].participants, (std::vector<AgentId>{1, 3}));
}

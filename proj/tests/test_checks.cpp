#include <gtest/gtest.h>

#include "roommates/checks.hpp"
#include "roommates/generators.hpp"
#include "support/bridge.hpp"

using namespace roommates;

TEST(Blocking, AgreesWithBruteForceOnRandomInstances) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Instance inst = gen_random(seed % 2 ? 4 : 6, 3, 3, seed);
    const auto b = support::to_brute(inst);
    for (const auto& a : brute::all_assignments(inst.agent_count())) {
      const auto mu = support::from_brute(a);
      for (bool four : {false, true}) {
        const auto kind = four ? StabilityKind::FourPerson : StabilityKind::TwoPerson;
        const auto report = blocking_pairs(inst, mu, kind);
        std::vector<std::pair<int, int>> got;
        for (const auto& p : report.pairs) got.emplace_back(p.i, p.j);
        ASSERT_EQ(got, brute::blocking(b, a, four)) << "seed " << seed;
        EXPECT_EQ(is_stable(inst, mu, kind), got.empty());
      }
    }
  }
}

TEST(Blocking, DeltasArePositiveGains) {
  const Instance inst = support::load("table9");
  const auto mu = Assignment::identity(6);
  for (const auto& p : blocking_pairs(inst, mu, StabilityKind::TwoPerson).pairs) {
    const auto after = swap_agents(mu, p.i, p.j);
    EXPECT_EQ(p.delta_i, utility(inst, after, p.i) - utility(inst, mu, p.i));
    EXPECT_EQ(p.delta_j, utility(inst, after, p.j) - utility(inst, mu, p.j));
    EXPECT_GT(p.delta_i, 0);
    EXPECT_GT(p.delta_j, 0);
  }
}

TEST(Blocking, Table8SerialDictatorshipOutput) {
  const Instance inst = support::load("table8");
  const auto mu = Assignment::identity(6);
  const auto two = blocking_pairs(inst, mu, StabilityKind::TwoPerson);
  std::vector<std::pair<int, int>> got;
  for (const auto& p : two.pairs) got.emplace_back(p.i, p.j);
  // (a2,a3) (a2,a4) (a2,a5) (a2,a6) (a4,a5) (a4,a6)
  EXPECT_EQ(got, (std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {1, 4}, {1, 5}, {3, 4}, {3, 5}}));
  EXPECT_TRUE(blocking_pairs(inst, mu, StabilityKind::FourPerson).empty());
}

TEST(Blocking, Table9InitialFourPersonPairs) {
  const Instance inst = support::load("table9");
  const auto report = blocking_pairs(inst, Assignment::identity(6), StabilityKind::FourPerson);
  ASSERT_EQ(report.count(), 4u);
  EXPECT_TRUE(report.contains(2, 4));  // (c,e)
  EXPECT_TRUE(report.contains(5, 2));  // (c,f)
  EXPECT_TRUE(report.contains(3, 4));
  EXPECT_TRUE(report.contains(3, 5));
}

TEST(Blocking, SameRoomPairRejected) {
  const Instance inst = support::load("table9");
  const auto mu = Assignment::identity(6);
  EXPECT_THROW(is_2ps_blocking(inst, mu, 0, 1), Error);
  EXPECT_THROW(is_4ps_blocking(inst, mu, 4, 5), Error);
}

TEST(Blocking, FourPersonImpliesTwoPerson) {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const Instance inst = gen_random(8, 4, 4, seed);
    const auto mu = Assignment::identity(8);
    const auto two = blocking_pairs(inst, mu, StabilityKind::TwoPerson);
    for (const auto& p : blocking_pairs(inst, mu, StabilityKind::FourPerson).pairs) EXPECT_TRUE(two.contains(p.i, p.j));
  }
}

TEST(Dominance, Table10) {
  const Instance inst = support::load("table10");
  const auto mu = Assignment::identity(4);
  const auto better = support::labelled(inst, {{"a3", "a4", "r1"}, {"a1", "a2", "r2"}});
  EXPECT_TRUE(pareto_dominates(inst, better, mu));
  EXPECT_FALSE(pareto_dominates(inst, mu, better));
  EXPECT_FALSE(pareto_dominates(inst, mu, mu));
  EXPECT_EQ(social_welfare(inst, mu), 40);
  EXPECT_EQ(social_welfare(inst, better), 48);
}

TEST(Dominance, AgreesWithBruteForce) {
  const Instance inst = gen_random(4, 2, 2, 7);
  const auto b = support::to_brute(inst);
  const auto all = brute::all_assignments(4);
  for (const auto& x : all)
    for (const auto& y : all)
      EXPECT_EQ(pareto_dominates(inst, support::from_brute(x), support::from_brute(y)), brute::dominates(b, x, y));
}

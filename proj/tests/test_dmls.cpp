#include <gtest/gtest.h>

#include "roommates/checks.hpp"
#include "roommates/double_matching.hpp"
#include "roommates/generators.hpp"
#include "roommates/io.hpp"
#include "roommates/oracle.hpp"
#include "support/bridge.hpp"

using namespace roommates;

TEST(Matching, PerfectMatchingMatchesBruteForce) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Instance inst = gen_random(seed % 2 ? 6 : 8, 9, 9, seed);
    const auto w = pair_weights(inst);
    brute::Mat bw(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) bw[i].assign(w[i].begin(), w[i].end());
    const auto pm = max_weight_perfect_matching(w);
    EXPECT_EQ(pm.weight, brute::max_matching_weight(bw));
    Value sum = 0;
    for (const auto& [a, b] : pm.edges) sum += w[a][b];
    EXPECT_EQ(sum, pm.weight);
  }
}

TEST(Matching, OneTwoMatchingMatchesBruteForce) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Instance inst = gen_random(seed % 2 ? 6 : 8, 9, 9, seed);
    const auto b = support::to_brute(inst);
    WeightMatrix v;
    for (int i = 0; i < inst.agent_count(); ++i) v.emplace_back(inst.v_row(i).begin(), inst.v_row(i).end());
    const auto om = max_weight_one_two_matching(v);
    EXPECT_EQ(om.weight, brute::max_one_two_weight(b.v));
    std::vector<int> load(inst.room_count(), 0);
    for (auto r : om.room_of) ++load[r];
    for (int l : load) EXPECT_EQ(l, 2);
  }
}

TEST(Matching, Errors) {
  EXPECT_THROW(max_weight_perfect_matching(WeightMatrix(3, std::vector<Value>(3, 0))), Error);
  EXPECT_THROW(max_weight_perfect_matching(WeightMatrix(14, std::vector<Value>(14, 0))), Error);
}

TEST(DoubleMatching, Table6) {
  const Instance inst = support::load("table6");
  const auto r = double_matching(inst);
  ASSERT_EQ(r.cycles.size(), 1u);
  auto w = r.cycles[0].class_weight;
  std::sort(w.begin(), w.end());
  EXPECT_EQ(w, (std::array<Value, 3>{6, 7, 9}));
  EXPECT_EQ(r.cycles[0].removed_weight, 6);
  EXPECT_EQ(assignment_text(inst, r.assignment), "{(a3,a4,r1),(a1,a2,r2),(a5,a6,r3)}");
}

TEST(DoubleMatching, Table6Misreport) {
  const Instance inst = support::load("table6");
  std::vector<Value> h(inst.h_row(0).begin(), inst.h_row(0).end());
  std::vector<Value> v(inst.v_row(0).begin(), inst.v_row(0).end());
  v[0] = 6;
  const Instance lie = inst.with_rows(0, h, v);
  const auto r = double_matching(lie);
  ASSERT_EQ(r.cycles.size(), 1u);
  EXPECT_EQ(r.cycles[0].removed_weight, 7);
  EXPECT_EQ(assignment_text(inst, r.assignment), "{(a1,a2,r1),(a5,a6,r2),(a3,a4,r3)}");
  const auto truthful = double_matching_local_search(inst).assignment;
  const auto manipulated = double_matching_local_search(lie).assignment;
  EXPECT_GT(utility(inst, manipulated, 0), utility(inst, truthful, 0));
}

TEST(DoubleMatching, RandomGuarantees) {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    const int m = 4 + 2 * static_cast<int>(seed % 3);
    const Instance inst = gen_random(m, 9, 9, seed);
    const auto dm = double_matching(inst);
    const Value opt = max_social_welfare(inst).welfare;
    EXPECT_GE(3 * social_welfare(inst, dm.assignment), 2 * opt) << "seed " << seed;
    const auto ls = local_search(inst, dm.assignment);
    EXPECT_TRUE(is_stable(inst, ls.assignment, StabilityKind::FourPerson));
    EXPECT_GE(social_welfare(inst, ls.assignment), social_welfare(inst, dm.assignment));
  }
}

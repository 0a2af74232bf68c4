#pragma once

// Double matching: a maximum-weight agent pairing M1 plus a maximum-weight
// agent-to-room matching M2 (two agents per room). Their union splits into
// alternating cycles; from each cycle the lightest residue class of edges is
// cut, which leaves one room and two agents per component.
//
// Both matchings are exact brute force, so instances are capped.

#include <array>
#include <utility>
#include <vector>

#include "roommates/checks.hpp"
#include "roommates/error.hpp"
#include "roommates/model.hpp"
#include "roommates/oracle.hpp"

namespace roommates {

using WeightMatrix = std::vector<std::vector<Value>>;

struct PerfectMatching {
  std::vector<std::pair<AgentId, AgentId>> edges;  // sorted, first < second
  Value weight = 0;
};

struct OneTwoMatching {
  std::vector<RoomId> room_of;  // per agent
  Value weight = 0;
};

/// w(i, j) = h(i, j) + h(j, i)
inline WeightMatrix pair_weights(const Instance& inst) {
  const int m = inst.agent_count();
  WeightMatrix w(m, std::vector<Value>(m, 0));
  for (AgentId i = 0; i < m; ++i)
    for (AgentId j = 0; j < m; ++j)
      if (i != j) w[i][j] = inst.h(i, j) + inst.h(j, i);
  return w;
}

/// Ties go to the lexicographically smallest edge list, which is the first
/// maximizer in pairing enumeration order.
inline PerfectMatching max_weight_perfect_matching(const WeightMatrix& w) {
  const int m = static_cast<int>(w.size());
  if (m == 0 || m % 2 != 0) throw Error(Errc::OddAgentCount, "matching needs an even, positive vertex count");
  for (const auto& row : w)
    if (static_cast<int>(row.size()) != m) throw Error(Errc::SizeMismatch, "weight matrix is not square");
  require_within_cap(m);
  std::optional<PerfectMatching> best;
  for_each_pairing(m, [&](const std::vector<std::pair<AgentId, AgentId>>& pairs) {
    Value total = 0;
    for (const auto& [a, b] : pairs) total += w[a][b];
    if (!best || total > best->weight) best = PerfectMatching{pairs, total};
  });
  return *best;
}

namespace detail {

inline void search_one_two(const WeightMatrix& v, AgentId agent, std::vector<int>& load,
                           std::vector<RoomId>& current, Value total, std::optional<OneTwoMatching>& best) {
  const int m = static_cast<int>(v.size());
  if (agent == m) {
    if (!best || total > best->weight) best = OneTwoMatching{current, total};
    return;
  }
  for (RoomId r = 0; r < static_cast<int>(load.size()); ++r) {
    if (load[r] == 2) continue;
    ++load[r];
    current[agent] = r;
    search_one_two(v, agent + 1, load, current, total + v[agent][r], best);
    --load[r];
  }
}

}  // namespace detail

/// Every agent gets one room and every room gets two agents. Ties go to the
/// lexicographically smallest room vector.
inline OneTwoMatching max_weight_one_two_matching(const WeightMatrix& v) {
  const int m = static_cast<int>(v.size());
  if (m == 0 || m % 2 != 0) throw Error(Errc::OddAgentCount, "1-2 matching needs an even, positive agent count");
  for (const auto& row : v)
    if (static_cast<int>(row.size()) != m / 2) throw Error(Errc::SizeMismatch, "room weight row has wrong length");
  require_within_cap(m);
  std::vector<int> load(m / 2, 0);
  std::vector<RoomId> current(m, -1);
  std::optional<OneTwoMatching> best;
  detail::search_one_two(v, 0, load, current, 0, best);
  return *best;
}

struct CycleReport {
  std::vector<AgentId> agents;      // in walk order, starting at the smallest agent
  std::array<Value, 3> class_weight;  // W_0, W_1, W_2
  int removed_class = -1;           // -1 when the cycle already is one triple
  Value removed_weight = 0;

  int length() const { return static_cast<int>(agents.size()) / 2; }
};

struct DoubleMatchingResult {
  Assignment assignment;
  PerfectMatching m1;
  OneTwoMatching m2;
  std::vector<CycleReport> cycles;
};

inline DoubleMatchingResult double_matching(const Instance& inst) {
  const int m = inst.agent_count();
  const int n = inst.room_count();
  require_within_cap(m);

  WeightMatrix room_w(m, std::vector<Value>(n));
  for (AgentId i = 0; i < m; ++i)
    for (RoomId r = 0; r < n; ++r) room_w[i][r] = inst.v(i, r);
  PerfectMatching m1 = max_weight_perfect_matching(pair_weights(inst));
  OneTwoMatching m2 = max_weight_one_two_matching(room_w);

  std::vector<AgentId> mate(m);
  for (const auto& [a, b] : m1.edges) mate[a] = b, mate[b] = a;
  std::vector<std::vector<AgentId>> occupants(n);
  for (AgentId i = 0; i < m; ++i) occupants[m2.room_of[i]].push_back(i);
  auto other_occupant = [&](RoomId r, AgentId i) {
    return occupants[r][0] == i ? occupants[r][1] : occupants[r][0];
  };

  // A vertex is an agent (id >= 0) or a room (encoded as -1 - r).
  auto room_vertex = [](RoomId r) { return -1 - r; };
  auto edge_weight = [&](int x, int y) -> Value {
    if (x >= 0 && y >= 0) return inst.h(x, y) + inst.h(y, x);
    const AgentId a = x >= 0 ? x : y;
    const RoomId r = x >= 0 ? -1 - y : -1 - x;
    return inst.v(a, r);
  };

  std::vector<bool> seen(m, false);
  std::vector<Triple> triples;
  std::vector<CycleReport> cycles;
  for (AgentId start = 0; start < m; ++start) {
    if (seen[start]) continue;
    // x_0 = room of start, x_1 = start, x_2 = its mate, x_3 = mate's room, ...
    std::vector<int> walk{room_vertex(m2.room_of[start])};
    AgentId a = start;
    CycleReport report;
    while (true) {
      const AgentId b = mate[a];
      seen[a] = seen[b] = true;
      report.agents.push_back(a);
      report.agents.push_back(b);
      walk.push_back(a);
      walk.push_back(b);
      const RoomId r = m2.room_of[b];
      if (room_vertex(r) == walk.front()) break;
      walk.push_back(room_vertex(r));
      a = other_occupant(r, b);
    }
    const int edges = static_cast<int>(walk.size());
    report.class_weight = {0, 0, 0};
    for (int k = 1; k <= edges; ++k) report.class_weight[k % 3] += edge_weight(walk[k - 1], walk[k % edges]);

    auto emit = [&](int k) {
      int vs[3] = {walk[k % edges], walk[(k + 1) % edges], walk[(k + 2) % edges]};
      Triple t{-1, -1, -1};
      for (int x : vs) {
        if (x < 0) t.room = -1 - x;
        else if (t.a < 0) t.a = x;
        else t.b = x;
      }
      if (t.a > t.b) std::swap(t.a, t.b);
      triples.push_back(t);
    };
    if (edges == 3) {
      emit(0);
    } else {
      int t = 0;
      for (int c = 1; c < 3; ++c)
        if (report.class_weight[c] < report.class_weight[t]) t = c;
      report.removed_class = t;
      report.removed_weight = report.class_weight[t];
      for (int k = t; k < edges; k += 3) emit(k);
    }
    cycles.push_back(std::move(report));
  }
  return {Assignment::from_triples(m, std::move(triples)), std::move(m1), std::move(m2), std::move(cycles)};
}

/// Swaps the lexicographically smallest 4PS blocking pair until none is left.
inline MechanismResult local_search(const Instance& inst, const Assignment& mu0) {
  Assignment mu = mu0;
  MechanismTrace trace;
  while (true) {
    const auto report = blocking_pairs(inst, mu, StabilityKind::FourPerson);
    if (report.empty()) break;
    const auto& p = report.pairs.front();
    const Value before = social_welfare(inst, mu);
    mu = swap_agents(mu, p.i, p.j);
    trace.steps.push_back({StepKind::Swap, {p.i, p.j}, before, social_welfare(inst, mu)});
  }
  return {std::move(mu), std::move(trace)};
}

inline MechanismResult double_matching_local_search(const Instance& inst) {
  return local_search(inst, double_matching(inst).assignment);
}

}  // namespace roommates

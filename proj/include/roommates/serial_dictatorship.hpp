#pragma once

#include <numeric>
#include <vector>

#include "roommates/error.hpp"
#include "roommates/model.hpp"

namespace roommates {

inline std::vector<AgentId> identity_order(int agent_count) {
  std::vector<AgentId> order(agent_count);
  std::iota(order.begin(), order.end(), 0);
  return order;
}

inline void require_permutation(std::span<const AgentId> order, int agent_count) {
  if (static_cast<int>(order.size()) != agent_count)
    throw Error(Errc::InvalidOrder, "order has " + std::to_string(order.size()) + " entries, expected " +
                                        std::to_string(agent_count));
  std::vector<bool> seen(agent_count, false);
  for (AgentId i : order) {
    if (i < 0 || i >= agent_count || seen[i])
      throw Error(Errc::InvalidOrder, "order is not a permutation of the agents");
    seen[i] = true;
  }
}

/// Serial dictatorship. Agents take turns in `order`; an agent that is still
/// unmatched picks its favourite unmatched roommate and its favourite
/// unmatched room. Ties go to the lowest index.
///
/// With ties in utility the output is still 4PS but may not be Pareto optimal.
inline MechanismResult serial_dictatorship(const Instance& inst, std::span<const AgentId> order) {
  const int m = inst.agent_count();
  require_permutation(order, m);
  std::vector<bool> agent_free(m, true);
  std::vector<bool> room_free(inst.room_count(), true);
  std::vector<Triple> picked;
  MechanismTrace trace;

  for (AgentId dictator : order) {
    if (!agent_free[dictator]) continue;
    AgentId mate = -1;
    for (AgentId j = 0; j < m; ++j) {
      if (j == dictator || !agent_free[j]) continue;
      if (mate < 0 || inst.h(dictator, j) > inst.h(dictator, mate)) mate = j;
    }
    RoomId room = -1;
    for (RoomId r = 0; r < inst.room_count(); ++r) {
      if (!room_free[r]) continue;
      if (room < 0 || inst.v(dictator, r) > inst.v(dictator, room)) room = r;
    }
    const Value before = partial_welfare(inst, picked);
    agent_free[dictator] = agent_free[mate] = false;
    room_free[room] = false;
    picked.push_back({dictator, mate, room});
    trace.steps.push_back(
        {StepKind::Pick, {dictator, mate}, before, partial_welfare(inst, picked), std::nullopt, room});
  }
  return {Assignment::from_triples(m, std::move(picked)), std::move(trace)};
}

inline MechanismResult serial_dictatorship(const Instance& inst) {
  const auto order = identity_order(inst.agent_count());
  return serial_dictatorship(inst, order);
}

}  // namespace roommates

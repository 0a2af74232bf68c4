#pragma once

// Stability, dominance and blocking-pair diagnostics for a fixed assignment.

#include <algorithm>
#include <string_view>
#include <vector>

#include "roommates/error.hpp"
#include "roommates/model.hpp"

namespace roommates {

enum class StabilityKind { TwoPerson, FourPerson };

constexpr std::string_view to_string(StabilityKind kind) {
  return kind == StabilityKind::TwoPerson ? "2PS" : "4PS";
}

struct BlockingPair {
  AgentId i;
  AgentId j;
  Value delta_i;
  Value delta_j;

  auto operator<=>(const BlockingPair&) const = default;
};

struct BlockingReport {
  StabilityKind kind;
  std::vector<BlockingPair> pairs;

  std::size_t count() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
  bool contains(AgentId i, AgentId j) const {
    if (i > j) std::swap(i, j);
    return std::any_of(pairs.begin(), pairs.end(),
                       [&](const BlockingPair& p) { return p.i == i && p.j == j; });
  }
};

namespace detail {

inline void require_cross_room(const Assignment& mu, AgentId i, AgentId j) {
  if (mu.room_of(i) == mu.room_of(j))
    throw Error(Errc::SameRoomSwap, "agents " + std::to_string(i) + " and " + std::to_string(j) +
                                        " share a room");
}

// Both swappers strictly gain.
inline bool swappers_gain(const Instance& inst, const Assignment& mu, AgentId i, AgentId j) {
  return utility_after_swap(inst, mu, i, j) > utility(inst, mu, i) &&
         utility_after_swap(inst, mu, j, i) > utility(inst, mu, j);
}

// Both left-behind roommates strictly prefer the incoming agent.
inline bool roommates_gain(const Instance& inst, const Assignment& mu, AgentId i, AgentId j) {
  const AgentId mate_i = mu.roommate(i);
  const AgentId mate_j = mu.roommate(j);
  return inst.h(mate_i, j) > inst.h(mate_i, i) && inst.h(mate_j, i) > inst.h(mate_j, j);
}

}  // namespace detail

inline bool is_2ps_blocking(const Instance& inst, const Assignment& mu, AgentId i, AgentId j) {
  detail::require_cross_room(mu, i, j);
  return detail::swappers_gain(inst, mu, i, j);
}

inline bool is_4ps_blocking(const Instance& inst, const Assignment& mu, AgentId i, AgentId j) {
  detail::require_cross_room(mu, i, j);
  return detail::swappers_gain(inst, mu, i, j) && detail::roommates_gain(inst, mu, i, j);
}

inline bool is_blocking(const Instance& inst, const Assignment& mu, AgentId i, AgentId j,
                        StabilityKind kind) {
  return kind == StabilityKind::TwoPerson ? is_2ps_blocking(inst, mu, i, j)
                                          : is_4ps_blocking(inst, mu, i, j);
}

/// All unordered cross-room pairs (i < j) blocking under `kind`, sorted.
inline BlockingReport blocking_pairs(const Instance& inst, const Assignment& mu, StabilityKind kind) {
  BlockingReport report{kind, {}};
  const int m = inst.agent_count();
  for (AgentId i = 0; i < m; ++i) {
    for (AgentId j = i + 1; j < m; ++j) {
      if (mu.room_of(i) == mu.room_of(j)) continue;
      if (!is_blocking(inst, mu, i, j, kind)) continue;
      report.pairs.push_back({i, j, utility_after_swap(inst, mu, i, j) - utility(inst, mu, i),
                              utility_after_swap(inst, mu, j, i) - utility(inst, mu, j)});
    }
  }
  return report;
}

inline bool is_stable(const Instance& inst, const Assignment& mu, StabilityKind kind) {
  const int m = inst.agent_count();
  for (AgentId i = 0; i < m; ++i)
    for (AgentId j = i + 1; j < m; ++j)
      if (mu.room_of(i) != mu.room_of(j) && is_blocking(inst, mu, i, j, kind)) return false;
  return true;
}

/// mu_prime Pareto dominates mu: nobody loses, somebody strictly gains.
inline bool pareto_dominates(const Instance& inst, const Assignment& mu_prime, const Assignment& mu) {
  bool strict = false;
  for (AgentId i = 0; i < inst.agent_count(); ++i) {
    const Value after = utility(inst, mu_prime, i);
    const Value before = utility(inst, mu, i);
    if (after < before) return false;
    if (after > before) strict = true;
  }
  return strict;
}

}  // namespace roommates

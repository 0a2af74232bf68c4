#pragma once

// Top-trading-cycle mechanisms for the roommate model: the naive variant,
// contractual TTC (CTTC) and contractual TTC with removal (CTTCR).
//
// Every agent has at most one outgoing arc. An arc i -> j means i wants to
// take j's place (j's roommate and room). Under the consent rules the
// roommate j leaves behind must like i at least as much as j.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "roommates/checks.hpp"
#include "roommates/error.hpp"
#include "roommates/model.hpp"

namespace roommates {

enum class ArcRule {
  /// Global argmax target, no consent required.
  Naive,
  /// Global argmax target, kept only if its roommate consents.
  StrictConsent,
  /// Argmax over the targets whose roommate consents.
  BestConsenting,
};

constexpr std::string_view to_string(ArcRule rule) {
  switch (rule) {
    case ArcRule::Naive: return "naive";
    case ArcRule::StrictConsent: return "strict";
    case ArcRule::BestConsenting: return "best";
  }
  return "unknown";
}

inline ArcRule parse_arc_rule(std::string_view text) {
  if (text == "naive") return ArcRule::Naive;
  if (text == "strict") return ArcRule::StrictConsent;
  if (text == "best") return ArcRule::BestConsenting;
  throw Error(Errc::InvalidArgument, "unknown arc rule '" + std::string(text) + "'");
}

using Cycle = std::vector<AgentId>;

struct TradingGraph {
  ArcRule rule = ArcRule::Naive;
  std::vector<bool> active;
  std::vector<std::optional<AgentId>> successor;

  std::size_t arc_count() const {
    return static_cast<std::size_t>(
        std::count_if(successor.begin(), successor.end(), [](const auto& s) { return s.has_value(); }));
  }
  bool has_arc(AgentId i) const { return successor[i].has_value(); }
};

/// j's roommate likes i at least as much as j.
inline bool roommate_consents(const Instance& inst, const Assignment& mu, AgentId i, AgentId j) {
  const AgentId mate = mu.roommate(j);
  return inst.h(mate, i) >= inst.h(mate, j);
}

/// Builds the trading graph on the `active` agents. Targets are restricted to
/// active agents in a different room; argmax ties go to the lowest index.
inline TradingGraph build_graph(const Instance& inst, const Assignment& mu, ArcRule rule,
                                const std::vector<bool>& active) {
  const int m = inst.agent_count();
  TradingGraph g{rule, active, std::vector<std::optional<AgentId>>(m)};
  for (AgentId i = 0; i < m; ++i) {
    if (!active[i]) continue;
    const Value current = utility(inst, mu, i);
    std::optional<Value> best;
    std::optional<AgentId> target;
    for (AgentId s = 0; s < m; ++s) {
      if (!active[s] || s == i || mu.room_of(s) == mu.room_of(i)) continue;
      const bool consent = roommate_consents(inst, mu, i, s);
      if (rule == ArcRule::BestConsenting && !consent) continue;
      const Value u = utility_after_swap(inst, mu, i, s);
      if (!best || u > *best) {
        best = u;
        target.reset();
      }
      // Under StrictConsent the arc goes to the lowest-index maximizer that
      // also has consent; a non-consenting maximizer yields no arc.
      if (u == *best && !target && (rule != ArcRule::StrictConsent || consent)) target = s;
    }
    if (best && *best > current && target) g.successor[i] = target;
  }
  return g;
}

inline TradingGraph build_graph(const Instance& inst, const Assignment& mu, ArcRule rule) {
  return build_graph(inst, mu, rule, std::vector<bool>(inst.agent_count(), true));
}

/// Every directed cycle, each rotated to start at its smallest agent, sorted
/// lexicographically.
inline std::vector<Cycle> all_cycles(const TradingGraph& g) {
  const int m = static_cast<int>(g.successor.size());
  std::vector<int> state(m, 0);  // 0 new, 1 on current walk, 2 done
  std::vector<Cycle> cycles;
  for (AgentId start = 0; start < m; ++start) {
    if (state[start] != 0) continue;
    std::vector<AgentId> walk;
    AgentId x = start;
    while (true) {
      state[x] = 1;
      walk.push_back(x);
      if (!g.successor[x]) break;
      const AgentId next = *g.successor[x];
      if (state[next] == 1) {
        auto from = std::find(walk.begin(), walk.end(), next);
        Cycle c(from, walk.end());
        std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
        cycles.push_back(std::move(c));
        break;
      }
      if (state[next] == 2) break;
      x = next;
    }
    for (AgentId y : walk) state[y] = 2;
  }
  std::sort(cycles.begin(), cycles.end());
  return cycles;
}

/// A cycle can be traded only if its agents occupy pairwise distinct rooms.
inline bool is_tradeable(const Assignment& mu, std::span<const AgentId> cycle) {
  if (cycle.size() < 2) return false;
  std::vector<bool> seen_room(mu.room_count(), false);
  for (AgentId i : cycle) {
    if (i < 0 || i >= mu.agent_count() || seen_room[mu.room_of(i)]) return false;
    seen_room[mu.room_of(i)] = true;
  }
  return true;
}

/// Picks one cycle out of a lexicographically sorted, non-empty list.
using CycleSelector = std::function<std::size_t(std::span<const Cycle>)>;

inline CycleSelector lex_smallest_cycle() {
  return [](std::span<const Cycle>) { return std::size_t{0}; };
}

inline CycleSelector lex_largest_cycle() {
  return [](std::span<const Cycle> cycles) { return cycles.size() - 1; };
}

inline CycleSelector parse_cycle_rule(std::string_view text) {
  if (text == "lex") return lex_smallest_cycle();
  if (text == "lex-last") return lex_largest_cycle();
  throw Error(Errc::InvalidArgument, "unknown cycle rule '" + std::string(text) + "'");
}

/// The selector's choice among the tradeable cycles of `g`, if any.
inline std::optional<Cycle> select_cycle(const TradingGraph& g, const Assignment& mu,
                                         const CycleSelector& select = lex_smallest_cycle()) {
  std::vector<Cycle> candidates;
  for (auto& c : all_cycles(g))
    if (is_tradeable(mu, c)) candidates.push_back(std::move(c));
  if (candidates.empty()) return std::nullopt;
  const std::size_t pick = select(candidates);
  if (pick >= candidates.size()) throw Error(Errc::InvalidArgument, "cycle selector out of range");
  return candidates[pick];
}

/// Each agent of the cycle takes the roommate and room of its successor.
inline Assignment apply_cycle(const Assignment& mu, std::span<const AgentId> cycle) {
  if (!is_tradeable(mu, cycle))
    throw Error(Errc::MalformedCycle, "cycle agents must be distinct and in distinct rooms");
  const std::size_t k = cycle.size();
  std::vector<bool> moving_room(mu.room_count(), false);
  for (AgentId i : cycle) moving_room[mu.room_of(i)] = true;
  std::vector<Triple> triples;
  for (const auto& t : mu.triples())
    if (!moving_room[t.room]) triples.push_back(t);
  for (std::size_t t = 0; t < k; ++t) {
    const AgentId next = cycle[(t + 1) % k];
    triples.push_back({cycle[t], mu.roommate(next), mu.room_of(next)});
  }
  return Assignment::from_triples(mu.agent_count(), std::move(triples));
}

// ---------------------------------------------------------------------------

enum class TtcStatus { Converged, NonTerminating, IterationLimit };

constexpr std::string_view to_string(TtcStatus status) {
  switch (status) {
    case TtcStatus::Converged: return "converged";
    case TtcStatus::NonTerminating: return "non-terminating";
    case TtcStatus::IterationLimit: return "iteration-limit";
  }
  return "unknown";
}

struct NaiveTtcResult {
  TtcStatus status;
  /// Final assignment; on NonTerminating this is the revisited state.
  Assignment assignment;
  MechanismTrace trace;
  /// Distinct states visited, starting with the initial assignment.
  std::vector<Assignment> states;
  /// Number of trades between the two visits of the repeated state.
  std::size_t state_cycle_length = 0;
};

/// Naive TTC: trade along cycles of the unconsented graph until no cycle is
/// left, a state repeats, or `max_iters` trades have been made.
inline NaiveTtcResult naive_ttc(const Instance& inst, const Assignment& mu0, std::size_t max_iters = 10'000,
                                const CycleSelector& select = lex_smallest_cycle()) {
  NaiveTtcResult result{TtcStatus::Converged, mu0, {}, {mu0}, 0};
  std::map<Assignment, std::size_t> seen{{mu0, 0}};
  Assignment mu = mu0;
  for (std::size_t iter = 0;; ++iter) {
    const auto cycle = select_cycle(build_graph(inst, mu, ArcRule::Naive), mu, select);
    if (!cycle) break;
    if (iter == max_iters) {
      result.status = TtcStatus::IterationLimit;
      break;
    }
    const Value before = social_welfare(inst, mu);
    mu = apply_cycle(mu, *cycle);
    result.trace.steps.push_back({StepKind::TradeCycle, *cycle, before, social_welfare(inst, mu)});
    if (auto it = seen.find(mu); it != seen.end()) {
      result.status = TtcStatus::NonTerminating;
      result.state_cycle_length = result.states.size() - it->second;
      break;
    }
    seen.emplace(mu, result.states.size());
    result.states.push_back(mu);
  }
  result.assignment = mu;
  return result;
}

namespace detail {

inline void require_consent_rule(ArcRule rule) {
  if (rule == ArcRule::Naive)
    throw Error(Errc::InvalidArgument, "contractual trading needs a consent arc rule");
}

}  // namespace detail

/// Contractual TTC: trade along consented cycles until none is left. Social
/// welfare strictly increases with each trade, so this terminates.
inline MechanismResult cttc(const Instance& inst, const Assignment& mu0,
                            ArcRule rule = ArcRule::StrictConsent,
                            const CycleSelector& select = lex_smallest_cycle()) {
  detail::require_consent_rule(rule);
  Assignment mu = mu0;
  MechanismTrace trace;
  while (auto cycle = select_cycle(build_graph(inst, mu, rule), mu, select)) {
    const Value before = social_welfare(inst, mu);
    mu = apply_cycle(mu, *cycle);
    trace.steps.push_back({StepKind::TradeCycle, *cycle, before, social_welfare(inst, mu)});
  }
  return {std::move(mu), std::move(trace)};
}

/// Contractual TTC with removal.
///
/// Cycles are traded as in CTTC. When no tradeable cycle is left, agents
/// without an outgoing arc join the removed set and the graph is rebuilt on
/// the remaining agents. The removed set accumulates until the next trade,
/// which re-admits everybody. The run ends once every agent is removed.
///
/// If every remaining agent has an arc but each cycle pairs up two
/// roommates, the lexicographically smallest 4PS blocking pair among the
/// remaining agents is swapped instead. Without such a pair the remaining
/// agents are removed. Under BestConsenting a removed agent never belongs to
/// a 4PS blocking pair, so the output is 4PS.
inline MechanismResult cttcr(const Instance& inst, const Assignment& mu0,
                             ArcRule rule = ArcRule::BestConsenting,
                             const CycleSelector& select = lex_smallest_cycle()) {
  detail::require_consent_rule(rule);
  const int m = inst.agent_count();
  Assignment mu = mu0;
  MechanismTrace trace;
  std::vector<bool> active(m, true);
  int removed = 0;
  TradingGraph g = build_graph(inst, mu, rule, active);

  auto readmit_all = [&] {
    active.assign(m, true);
    removed = 0;
    g = build_graph(inst, mu, rule, active);
  };

  while (removed < m) {
    while (auto cycle = select_cycle(g, mu, select)) {
      const Value before = social_welfare(inst, mu);
      mu = apply_cycle(mu, *cycle);
      trace.steps.push_back({StepKind::TradeCycle, *cycle, before, social_welfare(inst, mu)});
      readmit_all();
    }

    std::vector<AgentId> arcless;
    for (AgentId i = 0; i < m; ++i)
      if (active[i] && !g.has_arc(i)) arcless.push_back(i);

    if (arcless.empty()) {
      std::optional<std::pair<AgentId, AgentId>> pair;
      for (AgentId i = 0; i < m && !pair; ++i) {
        if (!active[i]) continue;
        for (AgentId j = i + 1; j < m && !pair; ++j)
          if (active[j] && mu.room_of(i) != mu.room_of(j) && is_4ps_blocking(inst, mu, i, j))
            pair = std::make_pair(i, j);
      }
      if (pair) {
        const Value before = social_welfare(inst, mu);
        mu = swap_agents(mu, pair->first, pair->second);
        trace.steps.push_back({StepKind::Swap, {pair->first, pair->second}, before, social_welfare(inst, mu)});
        readmit_all();
        continue;
      }
      for (AgentId i = 0; i < m; ++i)
        if (active[i]) arcless.push_back(i);
    }

    const Value sw = social_welfare(inst, mu);
    for (AgentId i : arcless) active[i] = false;
    removed += static_cast<int>(arcless.size());
    trace.steps.push_back({StepKind::Removal, std::move(arcless), sw, sw});
    g = build_graph(inst, mu, rule, active);
  }
  return {std::move(mu), std::move(trace)};
}

}  // namespace roommates

#pragma once

// Exhaustive ground truth for small instances. Every assignment is visited
// exactly once: pairings in lexicographic order, and for each pairing the room
// permutations in lexicographic order.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <type_traits>
#include <utility>
#include <vector>

#include "roommates/checks.hpp"
#include "roommates/error.hpp"
#include "roommates/model.hpp"

namespace roommates {

inline constexpr int kOracleHardCap = 12;
inline constexpr int kOracleDefaultCap = 10;

/// (2n)! / 2^n
inline std::uint64_t assignment_count(int agent_count) {
  std::uint64_t count = 1;
  for (int k = 1; k <= agent_count; ++k) count *= static_cast<std::uint64_t>(k);
  for (int k = 0; k < agent_count / 2; ++k) count /= 2;
  return count;
}

inline void require_within_cap(int agent_count, int cap = kOracleHardCap) {
  const int limit = std::min(cap, kOracleHardCap);
  if (agent_count > limit)
    throw Error(Errc::InstanceTooLarge, std::to_string(agent_count) + " agents exceeds the oracle cap of " +
                                            std::to_string(limit));
}

namespace detail {

template <class Visitor>
bool visit_pairings(std::vector<bool>& used, std::vector<std::pair<AgentId, AgentId>>& pairs,
                    Visitor& visit) {
  const int m = static_cast<int>(used.size());
  int first = 0;
  while (first < m && used[first]) ++first;
  if (first == m) return visit(pairs);
  used[first] = true;
  for (int partner = first + 1; partner < m; ++partner) {
    if (used[partner]) continue;
    used[partner] = true;
    pairs.emplace_back(first, partner);
    const bool keep_going = visit_pairings(used, pairs, visit);
    pairs.pop_back();
    used[partner] = false;
    if (!keep_going) {
      used[first] = false;
      return false;
    }
  }
  used[first] = false;
  return true;
}

template <class F, class... Args>
bool call_continue(F& f, Args&&... args) {
  if constexpr (std::is_void_v<std::invoke_result_t<F&, Args...>>) {
    f(std::forward<Args>(args)...);
    return true;
  } else {
    return static_cast<bool>(f(std::forward<Args>(args)...));
  }
}

}  // namespace detail

/// Calls `visit` on every perfect pairing of the agents, in lexicographic
/// order. The visitor may return false to stop early.
template <class Visitor>
void for_each_pairing(int agent_count, Visitor&& visit) {
  std::vector<bool> used(agent_count, false);
  std::vector<std::pair<AgentId, AgentId>> pairs;
  auto adapter = [&](const std::vector<std::pair<AgentId, AgentId>>& p) {
    return detail::call_continue(visit, p);
  };
  detail::visit_pairings(used, pairs, adapter);
}

/// Calls `visit(const Assignment&)` on every assignment in canonical
/// enumeration order. The visitor may return false to stop early.
template <class Visitor>
void for_each_assignment(int agent_count, Visitor&& visit, int cap = kOracleHardCap) {
  require_within_cap(agent_count, cap);
  const int n = agent_count / 2;
  std::vector<Triple> triples(n);
  for_each_pairing(agent_count, [&](const std::vector<std::pair<AgentId, AgentId>>& pairs) {
    std::vector<RoomId> rooms(n);
    std::iota(rooms.begin(), rooms.end(), 0);
    do {
      for (int k = 0; k < n; ++k) triples[k] = {pairs[k].first, pairs[k].second, rooms[k]};
      if (!detail::call_continue(visit, Assignment::from_triples(agent_count, triples))) return false;
    } while (std::next_permutation(rooms.begin(), rooms.end()));
    return true;
  });
}

inline std::vector<Assignment> enumerate_assignments(const Instance& inst, int cap = kOracleHardCap) {
  std::vector<Assignment> out;
  require_within_cap(inst.agent_count(), cap);
  out.reserve(assignment_count(inst.agent_count()));
  for_each_assignment(inst.agent_count(), [&](const Assignment& mu) { out.push_back(mu); }, cap);
  return out;
}

inline std::vector<Assignment> all_stable(const Instance& inst, StabilityKind kind,
                                          int cap = kOracleHardCap) {
  std::vector<Assignment> out;
  for_each_assignment(
      inst.agent_count(),
      [&](const Assignment& mu) {
        if (is_stable(inst, mu, kind)) out.push_back(mu);
      },
      cap);
  return out;
}

/// True iff no assignment Pareto dominates mu.
inline bool is_pareto_optimal(const Instance& inst, const Assignment& mu, int cap = kOracleHardCap) {
  const auto base = utility_profile(inst, mu);
  bool optimal = true;
  for_each_assignment(
      inst.agent_count(),
      [&](const Assignment& other) {
        bool strict = false;
        for (AgentId i = 0; i < inst.agent_count(); ++i) {
          const Value u = utility(inst, other, i);
          if (u < base[i]) return true;
          if (u > base[i]) strict = true;
        }
        if (strict) optimal = false;
        return optimal;
      },
      cap);
  return optimal;
}

/// All Pareto optimal assignments, in enumeration order.
inline std::vector<Assignment> pareto_front(const Instance& inst, int cap = kOracleHardCap) {
  struct Candidate {
    std::size_t order;
    Value welfare;
    std::vector<Value> profile;
  };
  std::vector<Assignment> all = enumerate_assignments(inst, cap);
  std::vector<Candidate> candidates;
  candidates.reserve(all.size());
  for (std::size_t k = 0; k < all.size(); ++k) {
    auto profile = utility_profile(inst, all[k]);
    const Value welfare = std::accumulate(profile.begin(), profile.end(), Value{0});
    candidates.push_back({k, welfare, std::move(profile)});
  }
  // A dominator has strictly larger welfare, so scanning by decreasing welfare
  // only needs to compare against front members found so far.
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& x, const Candidate& y) { return x.welfare > y.welfare; });
  auto dominates = [](const std::vector<Value>& x, const std::vector<Value>& y) {
    bool strict = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] < y[i]) return false;
      if (x[i] > y[i]) strict = true;
    }
    return strict;
  };
  std::vector<const Candidate*> front;
  for (const auto& c : candidates) {
    const bool dominated = std::any_of(front.begin(), front.end(), [&](const Candidate* f) {
      return f->welfare > c.welfare && dominates(f->profile, c.profile);
    });
    if (!dominated) front.push_back(&c);
  }
  std::sort(front.begin(), front.end(),
            [](const Candidate* x, const Candidate* y) { return x->order < y->order; });
  std::vector<Assignment> out;
  out.reserve(front.size());
  for (const Candidate* c : front) out.push_back(all[c->order]);
  return out;
}

struct WelfareOptimum {
  Value welfare;
  Assignment witness;
};

/// Maximum social welfare; the witness is the first maximizer in enumeration order.
inline WelfareOptimum max_social_welfare(const Instance& inst, int cap = kOracleHardCap) {
  std::optional<WelfareOptimum> best;
  for_each_assignment(
      inst.agent_count(),
      [&](const Assignment& mu) {
        const Value sw = social_welfare(inst, mu);
        if (!best || sw > best->welfare) best = WelfareOptimum{sw, mu};
      },
      cap);
  return *best;
}

}  // namespace roommates

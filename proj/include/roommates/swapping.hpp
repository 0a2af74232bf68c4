#pragma once

// Swapping algorithm for binary, symmetric valuations: repeatedly swap a 2PS
// blocking pair until none is left. On this class every such swap raises
// social welfare by at least 2, so at most 2n swaps happen.

#include <algorithm>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "roommates/checks.hpp"
#include "roommates/error.hpp"
#include "roommates/model.hpp"
#include "roommates/serial_dictatorship.hpp"

namespace roommates {

/// Picks one pair out of a sorted, non-empty list of blocking pairs.
using PairSelector = std::function<std::size_t(std::span<const BlockingPair>)>;

inline PairSelector lex_pair_rule() {
  return [](std::span<const BlockingPair>) { return std::size_t{0}; };
}

/// Prefers the pair whose better-ranked member comes first in `order`, then
/// the pair whose other member comes first.
inline PairSelector sd_order_pair_rule(std::vector<AgentId> order) {
  std::vector<int> rank(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) rank[order[k]] = static_cast<int>(k);
  return [rank = std::move(rank)](std::span<const BlockingPair> pairs) {
    auto key = [&](const BlockingPair& p) {
      return std::make_pair(std::min(rank[p.i], rank[p.j]), std::max(rank[p.i], rank[p.j]));
    };
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs.size(); ++k)
      if (key(pairs[k]) < key(pairs[best])) best = k;
    return best;
  };
}

/// Slack of the swap (i, j): the summed utility gain of the two swappers.
inline Value swap_slack(const Instance& inst, const Assignment& mu, AgentId i, AgentId j) {
  return utility_after_swap(inst, mu, i, j) + utility_after_swap(inst, mu, j, i) -
         utility(inst, mu, i) - utility(inst, mu, j);
}

inline MechanismResult swapping(const Instance& inst, const Assignment& mu0,
                                const PairSelector& select = lex_pair_rule()) {
  if (!is_binary_symmetric(inst))
    throw Error(Errc::NotBinarySymmetric, "swapping needs 0/1 values and symmetric roommate values");
  Assignment mu = mu0;
  MechanismTrace trace;
  while (true) {
    const auto report = blocking_pairs(inst, mu, StabilityKind::TwoPerson);
    if (report.empty()) break;
    const std::size_t pick = select(report.pairs);
    if (pick >= report.pairs.size()) throw Error(Errc::InvalidArgument, "pair selector out of range");
    const auto& p = report.pairs[pick];
    const Value before = social_welfare(inst, mu);
    const Value slack = swap_slack(inst, mu, p.i, p.j);
    mu = swap_agents(mu, p.i, p.j);
    trace.steps.push_back({StepKind::Swap, {p.i, p.j}, before, social_welfare(inst, mu), slack});
  }
  return {std::move(mu), std::move(trace)};
}

}  // namespace roommates

#pragma once

// One entry point for every algorithm, keyed by its CLI name.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "roommates/double_matching.hpp"
#include "roommates/error.hpp"
#include "roommates/model.hpp"
#include "roommates/oracle.hpp"
#include "roommates/serial_dictatorship.hpp"
#include "roommates/swapping.hpp"
#include "roommates/ttc.hpp"

namespace roommates {

struct MechanismOptions {
  std::optional<Assignment> initial;          // identity when absent
  std::optional<std::vector<AgentId>> order;  // sd, and the sd-order pair rule
  std::optional<ArcRule> arc_rule;            // cttc: strict, cttcr: best
  std::string cycle_rule = "lex";
  std::string pair_rule = "lex";
  std::size_t max_iters = 10'000;  // naive-ttc
};

inline const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names{"sd",   "naive-ttc", "cttc",  "cttcr",
                                              "swap", "dm",        "dm-ls", "oracle-2ps"};
  return names;
}

/// First 2PS assignment in enumeration order.
inline Assignment first_two_person_stable(const Instance& inst) {
  std::optional<Assignment> found;
  for_each_assignment(inst.agent_count(), [&](const Assignment& mu) {
    if (is_stable(inst, mu, StabilityKind::TwoPerson)) found = mu;
    return !found;
  });
  if (!found) throw Error(Errc::NoStableAssignment, "no 2PS assignment exists");
  return *found;
}

struct SolveResult {
  Assignment assignment;
  MechanismTrace trace;
  std::optional<TtcStatus> ttc_status;           // naive-ttc
  std::optional<std::size_t> state_cycle_length;  // naive-ttc, when it loops
  std::vector<CycleReport> dm_cycles;             // dm, dm-ls
};

inline SolveResult solve(const Instance& inst, const std::string& algo, const MechanismOptions& opt = {}) {
  const int m = inst.agent_count();
  Assignment mu0 = opt.initial.value_or(Assignment::identity(m));
  if (mu0.agent_count() != m) throw Error(Errc::InvalidAssignment, "initial assignment does not match the instance");
  const auto order = opt.order.value_or(identity_order(m));

  if (algo == "sd") {
    auto r = serial_dictatorship(inst, order);
    return {std::move(r.assignment), std::move(r.trace)};
  }
  if (algo == "naive-ttc") {
    auto r = naive_ttc(inst, mu0, opt.max_iters, parse_cycle_rule(opt.cycle_rule));
    SolveResult out{std::move(r.assignment), std::move(r.trace)};
    out.ttc_status = r.status;
    if (r.status == TtcStatus::NonTerminating) out.state_cycle_length = r.state_cycle_length;
    return out;
  }
  if (algo == "cttc") {
    auto r = cttc(inst, mu0, opt.arc_rule.value_or(ArcRule::StrictConsent), parse_cycle_rule(opt.cycle_rule));
    return {std::move(r.assignment), std::move(r.trace)};
  }
  if (algo == "cttcr") {
    auto r = cttcr(inst, mu0, opt.arc_rule.value_or(ArcRule::BestConsenting), parse_cycle_rule(opt.cycle_rule));
    return {std::move(r.assignment), std::move(r.trace)};
  }
  if (algo == "swap") {
    PairSelector select;
    if (opt.pair_rule == "lex") select = lex_pair_rule();
    else if (opt.pair_rule == "sd-order") select = sd_order_pair_rule(order);
    else throw Error(Errc::InvalidArgument, "unknown pair rule '" + opt.pair_rule + "'");
    auto r = swapping(inst, mu0, select);
    return {std::move(r.assignment), std::move(r.trace)};
  }
  if (algo == "dm" || algo == "dm-ls") {
    auto dm = double_matching(inst);
    SolveResult out{dm.assignment, {}};
    out.dm_cycles = std::move(dm.cycles);
    if (algo == "dm-ls") {
      auto ls = local_search(inst, dm.assignment);
      out.assignment = std::move(ls.assignment);
      out.trace = std::move(ls.trace);
    }
    return out;
  }
  if (algo == "oracle-2ps") return {first_two_person_stable(inst), {}};
  throw Error(Errc::InvalidArgument, "unknown algorithm '" + algo + "'");
}

/// A mechanism maps a reported instance to an assignment.
using Mechanism = std::function<Assignment(const Instance&)>;

/// naive-ttc only counts as a mechanism when it converges.
inline Mechanism make_mechanism(const std::string& algo, MechanismOptions opt = {}) {
  const auto& names = algorithm_names();
  if (std::find(names.begin(), names.end(), algo) == names.end())
    throw Error(Errc::InvalidArgument, "unknown algorithm '" + algo + "'");
  return [algo, opt = std::move(opt)](const Instance& inst) {
    auto r = solve(inst, algo, opt);
    if (r.ttc_status && *r.ttc_status != TtcStatus::Converged)
      throw Error(Errc::InvalidArgument, "naive-ttc did not converge");
    return std::move(r.assignment);
  };
}

}  // namespace roommates

#pragma once

#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "roommates/checks.hpp"
#include "roommates/error.hpp"
#include "roommates/generators.hpp"
#include "roommates/io.hpp"
#include "roommates/oracle.hpp"
#include "roommates/probe.hpp"
#include "roommates/report.hpp"
#include "roommates/solve.hpp"

namespace roommates::cli {

enum ExitCode { kOk = 0, kInternal = 1, kValidation = 2, kCapExceeded = 3, kPrecondition = 4 };

inline int exit_code(const Error& e) {
  switch (classify(e.code())) {
    case ErrorClass::Validation: return kValidation;
    case ErrorClass::CapExceeded: return kCapExceeded;
    case ErrorClass::Precondition: return kPrecondition;
  }
  return kInternal;
}

struct Globals {
  std::string instance;
  std::string assignment;
  std::string format = "text";
  std::uint64_t seed = 1;
  int jobs = 1;
};

struct SolveArgs {
  std::string algo;
  std::string initial;
  std::string order;
  std::string arc_rule;
  std::string cycle_rule = "lex";
  std::string pair_rule = "lex";
  std::size_t max_iters = 10'000;
  bool trace = false;
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

inline AgentId agent_by_label(const Instance& inst, const std::string& label) {
  const auto id = inst.find_agent(label);
  if (!id) throw Error(Errc::UnknownLabel, "unknown agent '" + label + "'");
  return *id;
}

inline Instance need_instance(const Globals& g) {
  if (g.instance.empty()) throw Error(Errc::InvalidArgument, "--instance is required");
  return load_instance(g.instance);
}

inline MechanismOptions mechanism_options(const Instance& inst, const Globals& g, const SolveArgs& a) {
  MechanismOptions opt;
  const std::string initial = !a.initial.empty() ? a.initial : g.assignment;
  if (!initial.empty()) opt.initial = load_assignment(inst, initial);
  if (!a.order.empty()) {
    std::vector<AgentId> order;
    for (const auto& label : split(a.order, ',')) order.push_back(agent_by_label(inst, label));
    require_permutation(order, inst.agent_count());
    opt.order = std::move(order);
  }
  if (!a.arc_rule.empty()) opt.arc_rule = parse_arc_rule(a.arc_rule);
  parse_cycle_rule(a.cycle_rule);
  opt.cycle_rule = a.cycle_rule;
  opt.pair_rule = a.pair_rule;
  opt.max_iters = a.max_iters;
  return opt;
}

inline void add_mechanism_flags(CLI::App* sub, SolveArgs& a) {
  sub->add_option("--algo", a.algo, "sd|naive-ttc|cttc|cttcr|swap|dm|dm-ls|oracle-2ps")->required();
  sub->add_option("--initial", a.initial, "initial assignment file (default: identity)");
  sub->add_option("--order", a.order, "comma separated agent labels (sd, sd-order rule)");
  sub->add_option("--arc-rule", a.arc_rule, "strict|best");
  sub->add_option("--cycle-rule", a.cycle_rule, "lex|lex-last");
  sub->add_option("--rule", a.pair_rule, "swap pair rule: lex|sd-order");
  sub->add_option("--max-iters", a.max_iters, "naive-ttc trade limit");
}

inline Json cycles_to_json(const Instance& inst, const std::vector<CycleReport>& cycles) {
  Json out = Json::array();
  for (const auto& c : cycles) {
    Json agents = Json::array();
    for (AgentId i : c.agents) agents.push_back(inst.agent_labels()[i]);
    Json row = {{"agents", agents}, {"W", {c.class_weight[0], c.class_weight[1], c.class_weight[2]}}};
    row["removed_class"] = c.removed_class < 0 ? Json(nullptr) : Json(c.removed_class);
    row["removed_weight"] = c.removed_weight;
    out.push_back(std::move(row));
  }
  return out;
}

inline std::string triples_csv(const Instance& inst, const Assignment& mu) {
  std::string out = "agent,agent,room\n";
  for (const auto& t : mu.triples())
    out += inst.agent_labels()[t.a] + "," + inst.agent_labels()[t.b] + "," + inst.room_labels()[t.room] + "\n";
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline int cmd_solve(const Globals& g, const SolveArgs& a, std::ostream& out) {
  const Instance inst = detail::need_instance(g);
  const auto result = solve(inst, a.algo, detail::mechanism_options(inst, g, a));
  const Value sw = social_welfare(inst, result.assignment);
  if (g.format == "json") {
    Json j = {{"algo", a.algo}, {"assignment", assignment_to_json(inst, result.assignment)}, {"sw", sw}};
    if (result.ttc_status) j["status"] = std::string(to_string(*result.ttc_status));
    if (result.state_cycle_length) j["state_cycle_length"] = *result.state_cycle_length;
    if (!result.dm_cycles.empty()) j["cycles"] = detail::cycles_to_json(inst, result.dm_cycles);
    if (a.trace) j["trace"] = trace_to_json(inst, result.trace);
    out << j.dump(2) << "\n";
  } else if (g.format == "csv") {
    out << detail::triples_csv(inst, result.assignment);
  } else {
    out << assignment_text(inst, result.assignment) << "\n";
    out << "sw " << sw << "\n";
    if (result.ttc_status) out << "status " << to_string(*result.ttc_status) << "\n";
    for (const auto& c : result.dm_cycles)
      out << "cycle W=(" << c.class_weight[0] << "," << c.class_weight[1] << "," << c.class_weight[2]
          << ") removed " << c.removed_class << "\n";
    if (a.trace)
      for (const auto& s : result.trace.steps) {
        out << to_string(s.kind);
        for (AgentId i : s.participants) out << " " << inst.agent_labels()[i];
        out << " sw " << s.sw_before << " -> " << s.sw_after << "\n";
      }
  }
  return kOk;
}

inline int cmd_check(const Globals& g, const std::string& kind, std::ostream& out) {
  const Instance inst = detail::need_instance(g);
  if (g.assignment.empty()) throw Error(Errc::InvalidArgument, "--assignment is required");
  const Assignment mu = load_assignment(inst, g.assignment);
  std::vector<BlockingReport> reports;
  if (kind == "2ps" || kind == "both") reports.push_back(blocking_pairs(inst, mu, StabilityKind::TwoPerson));
  if (kind == "4ps" || kind == "both") reports.push_back(blocking_pairs(inst, mu, StabilityKind::FourPerson));
  if (reports.empty()) throw Error(Errc::InvalidArgument, "--kind must be 2ps, 4ps or both");
  if (g.format == "json") {
    Json j = {{"sw", social_welfare(inst, mu)}, {"reports", Json::array()}};
    for (const auto& r : reports) j["reports"].push_back(blocking_to_json(inst, r));
    out << j.dump(2) << "\n";
  } else if (g.format == "csv") {
    out << kBlockingCsvHeader << "\n";
    for (const auto& r : reports) out << blocking_csv_rows(inst, r);
  } else {
    out << "sw " << social_welfare(inst, mu) << "\n";
    for (const auto& r : reports) {
      out << to_string(r.kind) << " blocking pairs: " << r.count() << "\n";
      for (const auto& p : r.pairs)
        out << "  (" << inst.agent_labels()[p.i] << "," << inst.agent_labels()[p.j] << ") +" << p.delta_i << " +"
            << p.delta_j << "\n";
    }
  }
  return kOk;
}

inline int cmd_oracle(const Globals& g, const std::string& query, int cap, std::ostream& out) {
  const Instance inst = detail::need_instance(g);
  require_within_cap(inst.agent_count(), cap);
  auto emit_list = [&](const std::vector<Assignment>& list) {
    if (g.format == "json") {
      Json arr = Json::array();
      for (const auto& mu : list)
        arr.push_back({{"assignment", assignment_to_json(inst, mu)}, {"sw", social_welfare(inst, mu)}});
      out << Json{{"query", query}, {"count", list.size()}, {"assignments", arr}}.dump(2) << "\n";
    } else if (g.format == "csv") {
      out << "index,assignment,sw\n";
      for (std::size_t k = 0; k < list.size(); ++k)
        out << k << ",\"" << assignment_text(inst, list[k]) << "\"," << social_welfare(inst, list[k]) << "\n";
    } else {
      out << query << ": " << list.size() << "\n";
      for (const auto& mu : list) out << "  " << assignment_text(inst, mu) << " sw " << social_welfare(inst, mu) << "\n";
    }
  };
  if (query == "stable-2ps") emit_list(all_stable(inst, StabilityKind::TwoPerson, cap));
  else if (query == "stable-4ps") emit_list(all_stable(inst, StabilityKind::FourPerson, cap));
  else if (query == "pareto") emit_list(pareto_front(inst, cap));
  else if (query == "max-sw") {
    const auto best = max_social_welfare(inst, cap);
    if (g.format == "json")
      out << Json{{"query", query}, {"max_sw", best.welfare}, {"witness", assignment_to_json(inst, best.witness)}}.dump(2)
          << "\n";
    else
      out << "max_sw " << best.welfare << "\nwitness " << assignment_text(inst, best.witness) << "\n";
  } else if (query == "is-po") {
    if (g.assignment.empty()) throw Error(Errc::InvalidArgument, "--assignment is required for is-po");
    const bool po = is_pareto_optimal(inst, load_assignment(inst, g.assignment), cap);
    if (g.format == "json") out << Json{{"query", query}, {"pareto_optimal", po}}.dump(2) << "\n";
    else out << "pareto_optimal " << (po ? "true" : "false") << "\n";
  } else {
    throw Error(Errc::InvalidArgument, "unknown oracle query '" + query + "'");
  }
  return kOk;
}

struct GenArgs {
  std::string kind = "random";
  int agents = 4;
  Value max_h = 10;
  Value max_v = 10;
  bool strict = false;
  double density_h = 0.5;
  double density_v = 0.5;
  int n = 2;
  std::string out;
  std::string initial_out;
};

inline int cmd_gen(const Globals& g, const GenArgs& a, std::ostream& out) {
  std::optional<Assignment> initial;
  Instance inst = [&] {
    if (a.kind == "random") return gen_random(a.agents, a.max_h, a.max_v, g.seed, a.strict);
    if (a.kind == "binary") return gen_binary_symmetric(a.agents, a.density_h, a.density_v, g.seed);
    if (a.kind == "family") {
      auto [fam, mu0] = gen_cttcr_2ps_family(a.n);
      initial = mu0;
      return fam;
    }
    throw Error(Errc::InvalidArgument, "unknown generator '" + a.kind + "'");
  }();
  const std::string text = format_instance(inst);
  if (a.out.empty()) out << text;
  else write_file(a.out, text);
  if (!a.initial_out.empty())
    write_file(a.initial_out, format_assignment(inst, initial.value_or(Assignment::identity(inst.agent_count()))));
  return kOk;
}

struct ProbeArgs {
  SolveArgs mech;
  std::string agent;
  std::string space = "permutations";
  Value grid_max = 1;
  std::string misreport;
  std::uint64_t budget = 2'000'000;
};

/// Misreport file: {"agent_values": [row], "room_values": [row]}.
inline Misreport load_misreport(const Instance& inst, const std::string& path) {
  const Json j = roommates::detail::parse_json(read_file(path));
  if (!j.is_object() || !j.contains("agent_values") || !j.contains("room_values"))
    throw Error(Errc::Parse, "misreport needs 'agent_values' and 'room_values' rows");
  Misreport lie;
  try {
    lie.h_row = j.at("agent_values").get<std::vector<Value>>();
    lie.v_row = j.at("room_values").get<std::vector<Value>>();
  } catch (const Json::exception& e) {
    throw Error(Errc::Parse, e.what());
  }
  if (static_cast<int>(lie.h_row.size()) != inst.agent_count() ||
      static_cast<int>(lie.v_row.size()) != inst.room_count())
    throw Error(Errc::SizeMismatch, "misreport rows have the wrong length");
  return lie;
}

inline int cmd_probe(const Globals& g, const ProbeArgs& a, std::ostream& out) {
  const Instance inst = detail::need_instance(g);
  const AgentId agent = detail::agent_by_label(inst, a.agent);
  const Mechanism mech = make_mechanism(a.mech.algo, detail::mechanism_options(inst, g, a.mech));
  auto row_json = [](const Misreport& lie) { return Json{{"agent_values", lie.h_row}, {"room_values", lie.v_row}}; };

  if (!a.misreport.empty()) {
    const Misreport lie = load_misreport(inst, a.misreport);
    const auto check = verify_manipulation(inst, mech, agent, lie);
    if (g.format == "json")
      out << Json{{"agent", a.agent},
                  {"improved", check.improved},
                  {"truthful", check.truthful},
                  {"manipulated", check.manipulated}}
                 .dump(2)
          << "\n";
    else
      out << "agent " << a.agent << " truthful " << check.truthful << " manipulated " << check.manipulated
          << (check.improved ? " improved" : " not improved") << "\n";
    return kOk;
  }

  SearchConfig cfg;
  if (a.space == "permutations") cfg.space = SearchSpace::Permutations;
  else if (a.space == "grid") cfg.space = SearchSpace::Grid;
  else throw Error(Errc::InvalidArgument, "--space must be permutations or grid");
  cfg.grid_max = a.grid_max;
  cfg.budget = a.budget;
  cfg.jobs = g.jobs;
  const auto result = manipulation_search(inst, mech, agent, cfg);
  if (g.format == "json") {
    Json j = {{"agent", a.agent}, {"evaluated", result.evaluated}, {"rejected", result.rejected}};
    if (result.found) {
      j["found"] = true;
      j["misreport"] = row_json(result.found->misreport);
      j["truthful"] = result.found->check.truthful;
      j["manipulated"] = result.found->check.manipulated;
      j["index"] = result.found->index;
    } else {
      j["found"] = false;
    }
    out << j.dump(2) << "\n";
  } else if (result.found) {
    out << "agent " << a.agent << " gains " << result.found->check.truthful << " -> "
        << result.found->check.manipulated << " by reporting " << row_json(result.found->misreport).dump() << "\n";
  } else {
    out << "no beneficial misreport found among " << result.evaluated << " candidates (" << result.rejected
        << " rejected by the mechanism)\n";
  }
  return kOk;
}

struct ReportArgs {
  std::string batch;
  std::string fixtures;
  std::string algos = "sd,cttc,cttcr,swap";
  bool summary = false;
  bool traces = false;
  int cap = kOracleDefaultCap;
};

/// Batch file: {"items": [{"instance": path, "algo": name, "id"?, "oracle"?,
/// "initial"?, "order"?, "arc_rule"?, "cycle_rule"?, "rule"?}]}. Relative paths
/// resolve against the batch file's directory.
inline std::vector<BatchItem> load_batch(const std::string& path, int cap, std::vector<ReportRow>& failed) {
  const Json j = roommates::detail::parse_json(read_file(path));
  if (!j.is_object() || !j.contains("items") || !j.at("items").is_array())
    throw Error(Errc::Parse, "batch file needs an 'items' array");
  const auto base = std::filesystem::path(path).parent_path();
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path fp(p);
    return (fp.is_absolute() ? fp : base / fp).string();
  };
  std::vector<BatchItem> items;
  for (const auto& it : j.at("items")) {
    const std::string file = it.value("instance", "");
    const std::string algo = it.value("algo", "");
    const std::string id = it.value("id", std::filesystem::path(file).stem().string());
    try {
      Instance inst = load_instance(resolve(file));
      SolveArgs sa;
      sa.algo = algo;
      if (it.contains("initial")) sa.initial = resolve(it.at("initial").get<std::string>());
      sa.order = it.value("order", "");
      sa.arc_rule = it.value("arc_rule", "");
      sa.cycle_rule = it.value("cycle_rule", "lex");
      sa.pair_rule = it.value("rule", "lex");
      Globals g;
      auto opt = detail::mechanism_options(inst, g, sa);
      items.push_back({id, std::move(inst), algo, std::move(opt), it.value("oracle", true), cap});
    } catch (const Error& e) {
      ReportRow row{id, algo};
      row.error = e.what();
      failed.push_back(std::move(row));
    }
  }
  return items;
}

inline int cmd_report(const Globals& g, const ReportArgs& a, std::ostream& out) {
  if (a.summary) {
    if (a.fixtures.empty()) throw Error(Errc::InvalidArgument, "--summary needs --fixtures");
    SummaryConfig cfg;
    cfg.seed = g.seed;
    cfg.jobs = g.jobs;
    const auto cells = reproduce_summary(load_fixture_dir(a.fixtures), cfg);
    bool all = true;
    if (g.format == "json") {
      Json arr = Json::array();
      for (const auto& c : cells) {
        all = all && c.matches();
        arr.push_back({{"algo", c.algo},
                       {"property", std::string(to_string(c.property))},
                       {"expected", c.expected},
                       {"observed", c.observed},
                       {"matches", c.matches()},
                       {"evidence", c.evidence}});
      }
      out << Json{{"version", kReportVersion}, {"cells", arr}, {"all_match", all}}.dump(2) << "\n";
    } else {
      out << "algo,property,expected,observed,matches,evidence\n";
      for (const auto& c : cells) {
        all = all && c.matches();
        out << c.algo << "," << to_string(c.property) << "," << (c.expected ? "yes" : "no") << ","
            << (c.observed ? "yes" : "no") << "," << (c.matches() ? "yes" : "no") << ","
            << roommates::detail::csv_escape(c.evidence) << "\n";
      }
    }
    return kOk;
  }

  std::vector<ReportRow> failed;
  std::vector<BatchItem> items;
  if (!a.batch.empty()) {
    items = load_batch(a.batch, a.cap, failed);
  } else if (!a.fixtures.empty()) {
    for (auto& f : load_fixture_dir(a.fixtures))
      for (const auto& algo : detail::split(a.algos, ','))
        items.push_back({f.id, f.instance, algo, {}, true, a.cap});
  }
  auto rows = run_report(items, g.jobs);
  if (g.format == "json") {
    Json j = report_to_json(rows, a.traces ? &items : nullptr);
    for (const auto& r : failed) j["rows"].push_back(report_to_json({r})["rows"][0]);
    out << j.dump(2) << "\n";
  } else {
    rows.insert(rows.end(), failed.begin(), failed.end());
    out << report_to_csv(rows);
  }
  return kOk;
}

// ---------------------------------------------------------------------------

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Roommate assignment mechanisms: solve, check, oracle, gen, probe, report"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--instance", g.instance, "instance JSON file");
  app.add_option("--assignment", g.assignment, "assignment JSON file");
  app.add_option("--format", g.format, "json|csv|text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::PositiveNumber);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "run an algorithm");
  detail::add_mechanism_flags(solve_cmd, solve_args);
  solve_cmd->add_flag("--trace", solve_args.trace, "include the step trace");

  std::string check_kind = "both";
  auto* check_cmd = app.add_subcommand("check", "list blocking pairs of an assignment");
  check_cmd->add_option("--kind", check_kind, "2ps|4ps|both");

  std::string query = "pareto";
  int cap = kOracleDefaultCap;
  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive ground truth");
  oracle_cmd->add_option("--query", query, "stable-2ps|stable-4ps|pareto|max-sw|is-po");
  oracle_cmd->add_option("--cap", cap, "largest agent count to enumerate (at most 12)");

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "generate an instance");
  gen_cmd->add_option("--kind", gen_args.kind, "random|binary|family");
  gen_cmd->add_option("--agents", gen_args.agents, "agent count (even)");
  gen_cmd->add_option("--max-h", gen_args.max_h, "largest roommate value");
  gen_cmd->add_option("--max-v", gen_args.max_v, "largest room value");
  gen_cmd->add_flag("--strict", gen_args.strict, "all (roommate, room) utilities distinct per agent");
  gen_cmd->add_option("--density-h", gen_args.density_h, "chance of a 1 roommate value (binary)");
  gen_cmd->add_option("--density-v", gen_args.density_v, "chance of a 1 room value (binary)");
  gen_cmd->add_option("--n", gen_args.n, "family size (rooms)");
  gen_cmd->add_option("--out", gen_args.out, "output file (default stdout)");
  gen_cmd->add_option("--initial-out", gen_args.initial_out, "also write the initial assignment");

  ProbeArgs probe_args;
  auto* probe_cmd = app.add_subcommand("probe", "search for beneficial misreports");
  detail::add_mechanism_flags(probe_cmd, probe_args.mech);
  probe_cmd->add_option("--agent", probe_args.agent, "manipulating agent label")->required();
  probe_cmd->add_option("--space", probe_args.space, "permutations|grid");
  probe_cmd->add_option("--grid-max", probe_args.grid_max, "grid values run 0..max");
  probe_cmd->add_option("--misreport", probe_args.misreport, "verify this misreport instead of searching");
  probe_cmd->add_option("--budget", probe_args.budget, "largest search space to enumerate");

  ReportArgs report_args;
  auto* report_cmd = app.add_subcommand("report", "batch runs and the property summary");
  report_cmd->add_option("--batch", report_args.batch, "batch JSON file");
  report_cmd->add_option("--fixtures", report_args.fixtures, "run every instance in this directory");
  report_cmd->add_option("--algos", report_args.algos, "comma separated algorithms for --fixtures");
  report_cmd->add_flag("--summary", report_args.summary, "reproduce the property summary table");
  report_cmd->add_flag("--traces", report_args.traces, "include traces in JSON output");
  report_cmd->add_option("--cap", report_args.cap, "oracle agent cap");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kValidation;
  }

  try {
    if (*solve_cmd) return cmd_solve(g, solve_args, out);
    if (*check_cmd) return cmd_check(g, check_kind, out);
    if (*oracle_cmd) return cmd_oracle(g, query, cap, out);
    if (*gen_cmd) return cmd_gen(g, gen_args, out);
    if (*probe_cmd) return cmd_probe(g, probe_args, out);
    if (*report_cmd) return cmd_report(g, report_args, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}

}  // namespace roommates::cli

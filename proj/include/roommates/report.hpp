#pragma once

// Batch runs and the property summary (2PS / 4PS / PO / SP per algorithm).

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "roommates/checks.hpp"
#include "roommates/error.hpp"
#include "roommates/generators.hpp"
#include "roommates/io.hpp"
#include "roommates/model.hpp"
#include "roommates/oracle.hpp"
#include "roommates/probe.hpp"
#include "roommates/solve.hpp"

namespace roommates {

inline constexpr int kReportVersion = 1;
inline constexpr const char* kReportCsvHeader =
    "instance,algo,sw,max_sw,sw_ratio,blocking_2ps,blocking_4ps,steps,wall_ms,error";

struct NamedInstance {
  std::string id;
  Instance instance;
};

struct BatchItem {
  std::string id;
  Instance instance;
  std::string algo;
  MechanismOptions options;
  bool oracle = true;
  int oracle_cap = kOracleDefaultCap;
};

struct ReportRow {
  std::string instance;
  std::string algo;
  std::optional<Value> sw;
  std::optional<Value> max_sw;
  std::optional<double> sw_ratio;
  std::optional<std::size_t> blocking_2ps;
  std::optional<std::size_t> blocking_4ps;
  std::optional<std::size_t> steps;  // swaps plus traded cycles
  double wall_ms = 0;
  std::string error;
  MechanismTrace trace;
};

inline std::string describe(const Error& e) { return e.what(); }

inline ReportRow run_item(const BatchItem& item) {
  ReportRow row{item.id, item.algo};
  const auto start = std::chrono::steady_clock::now();
  try {
    auto result = solve(item.instance, item.algo, item.options);
    if (result.ttc_status && *result.ttc_status != TtcStatus::Converged)
      row.error = "NonTerminating: " + std::string(to_string(*result.ttc_status));
    row.sw = social_welfare(item.instance, result.assignment);
    row.blocking_2ps = blocking_pairs(item.instance, result.assignment, StabilityKind::TwoPerson).count();
    row.blocking_4ps = blocking_pairs(item.instance, result.assignment, StabilityKind::FourPerson).count();
    row.steps = result.trace.count(StepKind::Swap) + result.trace.count(StepKind::TradeCycle);
    row.trace = std::move(result.trace);
    if (item.oracle) {
      try {
        row.max_sw = max_social_welfare(item.instance, item.oracle_cap).welfare;
        row.sw_ratio = *row.max_sw == 0 ? 1.0 : static_cast<double>(*row.sw) / static_cast<double>(*row.max_sw);
      } catch (const Error& e) {
        if (row.error.empty()) row.error = describe(e);
      }
    }
  } catch (const Error& e) {
    row.error = describe(e);
  }
  row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

/// Rows come back in input order whatever the job count.
inline std::vector<ReportRow> run_report(const std::vector<BatchItem>& batch, int jobs = 1) {
  std::vector<ReportRow> rows(batch.size());
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(batch.size())));
  std::atomic<std::size_t> cursor{0};
  auto work = [&] {
    for (std::size_t k = cursor++; k < batch.size(); k = cursor++) rows[k] = run_item(batch[k]);
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return rows;
}

namespace detail {

template <class T>
std::string cell(const std::optional<T>& x) {
  return x ? std::to_string(*x) : "";
}

inline std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

template <class T>
Json json_or_null(const std::optional<T>& x) {
  return x ? Json(*x) : Json(nullptr);
}

}  // namespace detail

inline std::string report_to_csv(const std::vector<ReportRow>& rows) {
  std::string out = std::string(kReportCsvHeader) + "\n";
  for (const auto& r : rows) {
    out += detail::csv_escape(r.instance) + "," + r.algo + "," + detail::cell(r.sw) + "," + detail::cell(r.max_sw) +
           "," + (r.sw_ratio ? detail::fixed(*r.sw_ratio, 6) : "") + "," + detail::cell(r.blocking_2ps) + "," +
           detail::cell(r.blocking_4ps) + "," + detail::cell(r.steps) + "," + detail::fixed(r.wall_ms, 3) + "," +
           detail::csv_escape(r.error) + "\n";
  }
  return out;
}

inline Json report_to_json(const std::vector<ReportRow>& rows, const std::vector<BatchItem>* batch = nullptr) {
  Json out_rows = Json::array();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    Json row = {{"instance", r.instance},
                {"algo", r.algo},
                {"sw", detail::json_or_null(r.sw)},
                {"max_sw", detail::json_or_null(r.max_sw)},
                {"sw_ratio", detail::json_or_null(r.sw_ratio)},
                {"blocking_2ps", detail::json_or_null(r.blocking_2ps)},
                {"blocking_4ps", detail::json_or_null(r.blocking_4ps)},
                {"steps", detail::json_or_null(r.steps)},
                {"wall_ms", r.wall_ms},
                {"error", r.error}};
    if (batch) row["trace"] = trace_to_json((*batch)[k].instance, r.trace);
    out_rows.push_back(std::move(row));
  }
  return {{"version", kReportVersion}, {"rows", out_rows}};
}

/// Every *.json instance in `dir`, sorted by file name; the id is the stem.
inline std::vector<NamedInstance> load_fixture_dir(const std::string& dir) {
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") paths.push_back(entry.path());
  std::sort(paths.begin(), paths.end());
  std::vector<NamedInstance> out;
  for (const auto& p : paths) out.push_back({p.stem().string(), load_instance(p.string())});
  return out;
}

// ---------------------------------------------------------------------------
// Property summary

enum class Property { TwoPerson, FourPerson, Pareto, StrategyProof };

constexpr std::string_view to_string(Property p) {
  switch (p) {
    case Property::TwoPerson: return "2PS";
    case Property::FourPerson: return "4PS";
    case Property::Pareto: return "PO";
    case Property::StrategyProof: return "SP";
  }
  return "?";
}

struct SummaryCell {
  std::string algo;
  Property property;
  bool expected;
  bool observed;  // true: no counterexample in the evidence set
  std::string evidence;
  std::size_t checked = 0;

  bool matches() const { return expected == observed; }
};

struct SummaryConfig {
  int random_instances = 60;        // per algorithm, for the positive cells
  std::uint64_t seed = 20240601;
  std::uint64_t probe_budget = 200'000;
  int jobs = 1;
};

struct SummaryRowSpec {
  std::string label;
  std::string algo;
  MechanismOptions options;
  bool binary_symmetric_only = false;
  bool strict_for_po = false;  // PO only judged on strict instances
  std::array<bool, 4> expected;
  bool probe_orders = false;  // SP: also try every agent order, up to 6 agents
};

/// The four algorithm rows with their expected cells.
inline std::vector<SummaryRowSpec> summary_rows() {
  MechanismOptions swap_sd;
  swap_sd.pair_rule = "sd-order";
  return {
      {"SD", "sd", {}, false, true, {false, true, true, true}},
      {"CTTC", "cttc", {}, false, false, {false, false, false, false}},
      {"CTTCR", "cttcr", {}, false, false, {false, true, false, false}},
      {"Swapping", "swap", swap_sd, true, false, {true, true, false, false}, true},
  };
}

namespace detail {

inline std::vector<NamedInstance> summary_randoms(const SummaryRowSpec& spec, const SummaryConfig& cfg) {
  std::vector<NamedInstance> out;
  for (int k = 0; k < cfg.random_instances; ++k) {
    const int two_n = 4 + 2 * (k % 2);
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(k);
    Instance inst = spec.binary_symmetric_only ? gen_binary_symmetric(two_n, 0.5, 0.5, seed)
                                               : gen_random(two_n, 6 * two_n, 6 * two_n, seed, spec.strict_for_po);
    out.push_back({"random-" + std::to_string(two_n) + "-" + std::to_string(seed), std::move(inst)});
  }
  return out;
}

}  // namespace detail

/// Looks for a counterexample to each property on the fixtures first and on
/// seeded random instances after. A property is observed to hold when none
/// turns up; for SP that only means the probe found no beneficial misreport.
inline std::vector<SummaryCell> reproduce_summary(const std::vector<NamedInstance>& fixtures,
                                                  const SummaryConfig& cfg = {}) {
  std::vector<SummaryCell> cells;
  for (const auto& spec : summary_rows()) {
    std::vector<NamedInstance> pool;
    for (const auto& f : fixtures)
      if (!spec.binary_symmetric_only || is_binary_symmetric(f.instance)) pool.push_back(f);
    for (auto& r : detail::summary_randoms(spec, cfg)) pool.push_back(std::move(r));
    const Mechanism mech = make_mechanism(spec.algo, spec.options);

    auto judge = [&](Property prop, auto&& counterexample) {
      SummaryCell cell{spec.label, prop, spec.expected[static_cast<int>(prop)], true, "", 0};
      for (const auto& item : pool) {
        std::optional<std::string> found;
        try {
          found = counterexample(item.instance);
        } catch (const Error& e) {
          if (classify(e.code()) == ErrorClass::CapExceeded) continue;
          throw;
        }
        ++cell.checked;
        if (found) {
          cell.observed = false;
          cell.evidence = item.id + ": " + *found;
          return cell;
        }
      }
      cell.evidence = "no counterexample in " + std::to_string(cell.checked) + " instances";
      return cell;
    };

    auto blocking_on = [&](StabilityKind kind) {
      return [&, kind](const Instance& inst) -> std::optional<std::string> {
        const auto mu = mech(inst);
        const auto report = blocking_pairs(inst, mu, kind);
        if (report.empty()) return std::nullopt;
        const auto& p = report.pairs.front();
        return std::to_string(report.count()) + " " + std::string(to_string(kind)) + " blocking pairs, first (" +
               inst.agent_labels()[p.i] + "," + inst.agent_labels()[p.j] + ")";
      };
    };

    cells.push_back(judge(Property::TwoPerson, blocking_on(StabilityKind::TwoPerson)));
    cells.push_back(judge(Property::FourPerson, blocking_on(StabilityKind::FourPerson)));
    cells.push_back(judge(Property::Pareto, [&](const Instance& inst) -> std::optional<std::string> {
      if (spec.strict_for_po && !is_strict(inst)) return std::nullopt;
      require_within_cap(inst.agent_count(), kOracleDefaultCap);
      const auto mu = mech(inst);
      if (is_pareto_optimal(inst, mu, kOracleDefaultCap)) return std::nullopt;
      return "output SW " + std::to_string(social_welfare(inst, mu)) + " is Pareto dominated";
    }));
    cells.push_back(judge(Property::StrategyProof, [&](const Instance& inst) -> std::optional<std::string> {
      SearchConfig sc;
      sc.space = spec.binary_symmetric_only ? SearchSpace::Grid : SearchSpace::Permutations;
      sc.grid_max = 1;
      sc.budget = cfg.probe_budget;
      sc.jobs = cfg.jobs;
      std::vector<std::optional<std::vector<AgentId>>> orders{spec.options.order};
      if (spec.probe_orders && inst.agent_count() <= 6) {
        std::vector<AgentId> ord(static_cast<std::size_t>(inst.agent_count()));
        std::iota(ord.begin(), ord.end(), 0);
        orders.clear();
        do orders.push_back(ord);
        while (std::next_permutation(ord.begin(), ord.end()));
      }
      for (const auto& ord : orders) {
        MechanismOptions opt = spec.options;
        opt.order = ord;
        const Mechanism m = make_mechanism(spec.algo, opt);
        for (AgentId i = 0; i < inst.agent_count(); ++i) {
          const auto out = manipulation_search(inst, m, i, sc);
          if (!out.found) continue;
          std::string msg = "agent " + inst.agent_labels()[i] + " gains " + std::to_string(out.found->check.truthful) +
                            " -> " + std::to_string(out.found->check.manipulated);
          if (spec.probe_orders && ord) {
            msg += " under order ";
            for (std::size_t k = 0; k < ord->size(); ++k) msg += (k ? "," : "") + inst.agent_labels()[(*ord)[k]];
          }
          return msg;
        }
      }
      return std::nullopt;
    }));
  }
  return cells;
}

}  // namespace roommates

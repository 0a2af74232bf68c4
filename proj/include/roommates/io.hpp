#pragma once

// JSON and CSV formats. Instances are written with one matrix row per line so
// that files diff well and round-trip byte for byte.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "roommates/checks.hpp"
#include "roommates/error.hpp"
#include "roommates/model.hpp"

namespace roommates {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::vector<std::vector<Value>> parse_matrix(const Json& j, const char* key) {
  if (!j.contains(key)) throw Error(Errc::Parse, std::string("missing key '") + key + "'");
  const Json& rows = j.at(key);
  if (!rows.is_array()) throw Error(Errc::Parse, std::string("'") + key + "' must be an array of rows");
  std::vector<std::vector<Value>> out;
  for (const auto& row : rows) {
    if (!row.is_array()) throw Error(Errc::Parse, std::string("'") + key + "' rows must be arrays");
    std::vector<Value> r;
    for (const auto& x : row) {
      if (!x.is_number_integer()) throw Error(Errc::Parse, std::string("'") + key + "' entries must be integers");
      r.push_back(x.get<Value>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<std::string> parse_labels(const Json& j, const char* key) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  if (!j.at(key).is_array()) throw Error(Errc::Parse, std::string("'") + key + "' must be an array");
  for (const auto& x : j.at(key)) {
    if (!x.is_string()) throw Error(Errc::Parse, std::string("'") + key + "' entries must be strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(Errc::Parse, e.what());
  }
}

inline std::string quote(const std::string& s) { return Json(s).dump(); }

}  // namespace detail

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Parse, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Parse, "cannot write '" + path + "'");
  out << text;
}

inline RawInstance raw_instance_from_json(const Json& j) {
  if (!j.is_object()) throw Error(Errc::Parse, "instance must be a JSON object");
  RawInstance raw;
  raw.agents = detail::parse_labels(j, "agents");
  raw.rooms = detail::parse_labels(j, "rooms");
  raw.agent_values = detail::parse_matrix(j, "agent_values");
  raw.room_values = detail::parse_matrix(j, "room_values");
  if (j.contains("note")) {
    if (!j.at("note").is_string()) throw Error(Errc::Parse, "'note' must be a string");
    raw.note = j.at("note").get<std::string>();
  }
  return raw;
}

inline Instance parse_instance(const std::string& text) {
  return validate_instance(raw_instance_from_json(detail::parse_json(text)));
}

inline Instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

inline std::string format_instance(const Instance& inst) {
  auto labels = [](const std::vector<std::string>& xs) {
    std::string s = "[";
    for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? ", " : "") + detail::quote(xs[k]);
    return s + "]";
  };
  auto matrix = [](auto row_of, int rows) {
    std::string s = "[\n";
    for (int i = 0; i < rows; ++i) {
      const auto row = row_of(i);
      s += "    [";
      for (std::size_t k = 0; k < row.size(); ++k) s += (k ? ", " : "") + std::to_string(row[k]);
      s += i + 1 < rows ? "],\n" : "]\n";
    }
    return s + "  ]";
  };
  const int m = inst.agent_count();
  std::string out = "{\n";
  if (!inst.note().empty()) out += "  \"note\": " + detail::quote(inst.note()) + ",\n";
  out += "  \"agents\": " + labels(inst.agent_labels()) + ",\n";
  out += "  \"rooms\": " + labels(inst.room_labels()) + ",\n";
  out += "  \"agent_values\": " + matrix([&](int i) { return inst.h_row(i); }, m) + ",\n";
  out += "  \"room_values\": " + matrix([&](int i) { return inst.v_row(i); }, m) + "\n";
  return out + "}\n";
}

// ---------------------------------------------------------------------------

inline Assignment assignment_from_json(const Instance& inst, const Json& j) {
  if (!j.is_array()) throw Error(Errc::Parse, "assignment must be an array of triples");
  std::vector<Triple> triples;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_string() || !t[1].is_string() || !t[2].is_string())
      throw Error(Errc::Parse, "each triple must be [agent, agent, room] labels");
    auto agent = [&](const Json& x) {
      const auto id = inst.find_agent(x.get<std::string>());
      if (!id) throw Error(Errc::UnknownLabel, "unknown agent '" + x.get<std::string>() + "'");
      return *id;
    };
    const auto room = inst.find_room(t[2].get<std::string>());
    if (!room) throw Error(Errc::UnknownLabel, "unknown room '" + t[2].get<std::string>() + "'");
    triples.push_back({agent(t[0]), agent(t[1]), *room});
  }
  return Assignment::from_triples(inst.agent_count(), std::move(triples));
}

inline Assignment parse_assignment(const Instance& inst, const std::string& text) {
  return assignment_from_json(inst, detail::parse_json(text));
}

inline Assignment load_assignment(const Instance& inst, const std::string& path) {
  return parse_assignment(inst, read_file(path));
}

inline Json assignment_to_json(const Instance& inst, const Assignment& mu) {
  Json out = Json::array();
  for (const auto& t : mu.triples())
    out.push_back({inst.agent_labels()[t.a], inst.agent_labels()[t.b], inst.room_labels()[t.room]});
  return out;
}

inline std::string format_assignment(const Instance& inst, const Assignment& mu) {
  return assignment_to_json(inst, mu).dump() + "\n";
}

/// {(a,b,r1),(c,d,r2)}
inline std::string assignment_text(const Instance& inst, const Assignment& mu) {
  std::string s = "{";
  for (std::size_t k = 0; k < mu.triples().size(); ++k) {
    const auto& t = mu.triples()[k];
    s += (k ? ",(" : "(") + inst.agent_labels()[t.a] + "," + inst.agent_labels()[t.b] + "," +
         inst.room_labels()[t.room] + ")";
  }
  return s + "}";
}

// ---------------------------------------------------------------------------

inline Json blocking_to_json(const Instance& inst, const BlockingReport& report) {
  Json pairs = Json::array();
  for (const auto& p : report.pairs)
    pairs.push_back({{"i", inst.agent_labels()[p.i]},
                     {"j", inst.agent_labels()[p.j]},
                     {"delta_i", p.delta_i},
                     {"delta_j", p.delta_j}});
  return {{"kind", std::string(to_string(report.kind))}, {"count", report.count()}, {"pairs", pairs}};
}

inline constexpr const char* kBlockingCsvHeader = "kind,i,j,delta_i,delta_j";

inline std::string blocking_csv_rows(const Instance& inst, const BlockingReport& report) {
  std::string out;
  for (const auto& p : report.pairs)
    out += std::string(to_string(report.kind)) + "," + inst.agent_labels()[p.i] + "," + inst.agent_labels()[p.j] +
           "," + std::to_string(p.delta_i) + "," + std::to_string(p.delta_j) + "\n";
  return out;
}

inline std::string blocking_to_csv(const Instance& inst, const BlockingReport& report) {
  return std::string(kBlockingCsvHeader) + "\n" + blocking_csv_rows(inst, report);
}

inline Json trace_to_json(const Instance& inst, const MechanismTrace& trace) {
  Json out = Json::array();
  for (const auto& s : trace.steps) {
    Json who = Json::array();
    for (AgentId i : s.participants) who.push_back(inst.agent_labels()[i]);
    Json step = {{"kind", std::string(to_string(s.kind))},
                 {"participants", who},
                 {"sw_before", s.sw_before},
                 {"sw_after", s.sw_after}};
    if (s.slack) step["slack"] = *s.slack;
    if (s.room) step["room"] = inst.room_labels()[*s.room];
    out.push_back(std::move(step));
  }
  return out;
}

}  // namespace roommates

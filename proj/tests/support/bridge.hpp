#pragma once

#include <string>

#include "brute.hpp"
#include "roommates/io.hpp"
#include "roommates/model.hpp"

namespace support {

inline std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name + ".json"; }

inline roommates::Instance load(const std::string& name) { return roommates::load_instance(fixture(name)); }

inline brute::Inst to_brute(const roommates::Instance& inst) {
  brute::Inst out;
  for (int i = 0; i < inst.agent_count(); ++i) {
    out.h.emplace_back(inst.h_row(i).begin(), inst.h_row(i).end());
    out.v.emplace_back(inst.v_row(i).begin(), inst.v_row(i).end());
  }
  return out;
}

inline brute::Asg to_brute(const roommates::Assignment& mu) {
  brute::Asg out;
  for (const auto& t : mu.triples()) out.push_back({t.a, t.b, t.room});
  return brute::canon(out);
}

inline roommates::Assignment from_brute(const brute::Asg& a) {
  std::vector<roommates::Triple> t;
  for (const auto& x : a) t.push_back({x[0], x[1], x[2]});
  return roommates::Assignment::from_triples(static_cast<int>(a.size()) * 2, t);
}

/// Triples written with labels, e.g. {{"a","c","i"},{"b","f","j"}}.
inline roommates::Assignment labelled(const roommates::Instance& inst,
                                      std::initializer_list<std::array<const char*, 3>> triples) {
  std::vector<roommates::Triple> t;
  for (const auto& x : triples)
    t.push_back({*inst.find_agent(x[0]), *inst.find_agent(x[1]), *inst.find_room(x[2])});
  return roommates::Assignment::from_triples(inst.agent_count(), t);
}

}  // namespace support

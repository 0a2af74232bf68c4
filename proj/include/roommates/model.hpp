#pragma once

// Core data model: instances, assignments, utilities, the swap operation and
// social welfare. Everything here is an immutable value once constructed.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "roommates/error.hpp"

namespace roommates {

using Value = std::int64_t;
using AgentId = int;
using RoomId = int;

/// Finite stand-in for an "infinitely" valued entry. Any fixture that uses it
/// keeps every competing utility sum far below this value.
inline constexpr Value kBig = 1'000'000;

/// Decoded, not yet validated instance data (as read from the JSON format).
struct RawInstance {
  std::vector<std::string> agents;
  std::vector<std::string> rooms;
  std::vector<std::vector<Value>> agent_values;
  std::vector<std::vector<Value>> room_values;
  std::string note;
};

class Instance;
Instance validate_instance(RawInstance raw);

/// The market: 2n agents, n rooms, roommate values h and room values v.
class Instance {
 public:
  int agent_count() const { return agent_count_; }
  int room_count() const { return agent_count_ / 2; }

  /// Agent i's value for living with agent j.
  Value h(AgentId i, AgentId j) const { return h_[index_h(i, j)]; }
  /// Agent i's value for room r.
  Value v(AgentId i, RoomId r) const { return v_[index_v(i, r)]; }

  std::span<const Value> h_row(AgentId i) const {
    return {h_.data() + static_cast<std::size_t>(i) * agent_count_,
            static_cast<std::size_t>(agent_count_)};
  }
  std::span<const Value> v_row(AgentId i) const {
    return {v_.data() + static_cast<std::size_t>(i) * room_count(),
            static_cast<std::size_t>(room_count())};
  }

  const std::vector<std::string>& agent_labels() const { return agent_labels_; }
  const std::vector<std::string>& room_labels() const { return room_labels_; }
  const std::string& note() const { return note_; }

  std::optional<AgentId> find_agent(std::string_view label) const {
    auto it = std::find(agent_labels_.begin(), agent_labels_.end(), label);
    if (it == agent_labels_.end()) return std::nullopt;
    return static_cast<AgentId>(it - agent_labels_.begin());
  }
  std::optional<RoomId> find_room(std::string_view label) const {
    auto it = std::find(room_labels_.begin(), room_labels_.end(), label);
    if (it == room_labels_.end()) return std::nullopt;
    return static_cast<RoomId>(it - room_labels_.begin());
  }

  /// Copy of this instance with agent i's reported rows replaced. The result
  /// is validated like any other instance.
  Instance with_rows(AgentId i, std::span<const Value> h_row,
                     std::span<const Value> v_row) const {
    RawInstance raw = to_raw();
    raw.agent_values[i].assign(h_row.begin(), h_row.end());
    raw.room_values[i].assign(v_row.begin(), v_row.end());
    return validate_instance(std::move(raw));
  }

  RawInstance to_raw() const {
    RawInstance raw;
    raw.agents = agent_labels_;
    raw.rooms = room_labels_;
    raw.note = note_;
    for (AgentId i = 0; i < agent_count_; ++i) {
      raw.agent_values.emplace_back(h_row(i).begin(), h_row(i).end());
      raw.room_values.emplace_back(v_row(i).begin(), v_row(i).end());
    }
    return raw;
  }

  bool operator==(const Instance&) const = default;

 private:
  friend Instance validate_instance(RawInstance raw);
  Instance() = default;

  std::size_t index_h(AgentId i, AgentId j) const {
    return static_cast<std::size_t>(i) * agent_count_ + j;
  }
  std::size_t index_v(AgentId i, RoomId r) const {
    return static_cast<std::size_t>(i) * room_count() + r;
  }

  int agent_count_ = 0;
  std::vector<Value> h_;
  std::vector<Value> v_;
  std::vector<std::string> agent_labels_;
  std::vector<std::string> room_labels_;
  std::string note_;
};

inline std::vector<std::string> default_agent_labels(int agent_count) {
  std::vector<std::string> labels;
  for (int i = 0; i < agent_count; ++i) labels.push_back("a" + std::to_string(i + 1));
  return labels;
}

inline std::vector<std::string> default_room_labels(int room_count) {
  std::vector<std::string> labels;
  for (int r = 0; r < room_count; ++r) labels.push_back("r" + std::to_string(r + 1));
  return labels;
}

namespace detail {

inline void check_labels(const std::vector<std::string>& labels, const char* what) {
  std::unordered_set<std::string> seen;
  for (const auto& label : labels) {
    if (label.empty()) throw Error(Errc::InvalidArgument, std::string("empty ") + what + " label");
    if (!seen.insert(label).second)
      throw Error(Errc::DuplicateLabel, std::string(what) + " label '" + label + "'");
  }
}

inline void check_value(Value x, const std::string& where) {
  if (x < 0) throw Error(Errc::NegativeValue, where + " = " + std::to_string(x));
  if (x > kBig) throw Error(Errc::ValueAboveBig, where + " = " + std::to_string(x));
}

}  // namespace detail

/// Validates decoded instance data. Empty label lists are replaced by the
/// default labels a1..a2n and r1..rn.
inline Instance validate_instance(RawInstance raw) {
  // The agent count comes from the labels when present, else from the matrix.
  const std::size_t declared = !raw.agents.empty() ? raw.agents.size() : raw.agent_values.size();
  if (declared == 0 || declared % 2 != 0)
    throw Error(Errc::OddAgentCount,
                "agent count must be a positive even integer, got " + std::to_string(declared));
  const int agent_count = static_cast<int>(declared);
  const int room_count = agent_count / 2;

  if (raw.agents.empty()) raw.agents = default_agent_labels(agent_count);
  if (raw.rooms.empty()) raw.rooms = default_room_labels(room_count);
  if (static_cast<int>(raw.rooms.size()) != room_count)
    throw Error(Errc::SizeMismatch, "expected " + std::to_string(room_count) + " rooms, got " +
                                        std::to_string(raw.rooms.size()));
  if (raw.agent_values.size() != declared)
    throw Error(Errc::SizeMismatch, "agent_values must have " + std::to_string(agent_count) + " rows");
  if (raw.room_values.size() != declared)
    throw Error(Errc::SizeMismatch, "room_values must have " + std::to_string(agent_count) + " rows");
  detail::check_labels(raw.agents, "agent");
  detail::check_labels(raw.rooms, "room");

  Instance inst;
  inst.agent_count_ = agent_count;
  inst.h_.reserve(static_cast<std::size_t>(agent_count) * agent_count);
  inst.v_.reserve(static_cast<std::size_t>(agent_count) * room_count);
  for (int i = 0; i < agent_count; ++i) {
    const auto& hr = raw.agent_values[i];
    const auto& vr = raw.room_values[i];
    if (static_cast<int>(hr.size()) != agent_count)
      throw Error(Errc::SizeMismatch, "agent_values row " + std::to_string(i) + " has " +
                                          std::to_string(hr.size()) + " entries");
    if (static_cast<int>(vr.size()) != room_count)
      throw Error(Errc::SizeMismatch, "room_values row " + std::to_string(i) + " has " +
                                          std::to_string(vr.size()) + " entries");
    for (int j = 0; j < agent_count; ++j) {
      detail::check_value(hr[j], "agent_values[" + std::to_string(i) + "][" + std::to_string(j) + "]");
      if (i == j && hr[j] != 0)
        throw Error(Errc::NonzeroDiagonal, "agent_values[" + std::to_string(i) + "][" +
                                               std::to_string(i) + "] = " + std::to_string(hr[j]));
      inst.h_.push_back(hr[j]);
    }
    for (int r = 0; r < room_count; ++r) {
      detail::check_value(vr[r], "room_values[" + std::to_string(i) + "][" + std::to_string(r) + "]");
      inst.v_.push_back(vr[r]);
    }
  }
  inst.agent_labels_ = std::move(raw.agents);
  inst.room_labels_ = std::move(raw.rooms);
  inst.note_ = std::move(raw.note);
  return inst;
}

/// Convenience constructor from matrices with default labels.
inline Instance make_instance(std::vector<std::vector<Value>> agent_values,
                              std::vector<std::vector<Value>> room_values) {
  RawInstance raw;
  raw.agent_values = std::move(agent_values);
  raw.room_values = std::move(room_values);
  return validate_instance(std::move(raw));
}

inline Instance zero_instance(int agent_count) {
  if (agent_count <= 0 || agent_count % 2 != 0)
    throw Error(Errc::OddAgentCount, "agent count " + std::to_string(agent_count));
  const auto n = static_cast<std::size_t>(agent_count);
  return make_instance(std::vector<std::vector<Value>>(n, std::vector<Value>(n, 0)),
                       std::vector<std::vector<Value>>(n, std::vector<Value>(n / 2, 0)));
}

/// True iff every h and v entry is 0 or 1 and h is symmetric.
inline bool is_binary_symmetric(const Instance& inst) {
  const int m = inst.agent_count();
  for (AgentId i = 0; i < m; ++i) {
    for (AgentId j = 0; j < m; ++j) {
      const Value x = inst.h(i, j);
      if (x > 1 || x != inst.h(j, i)) return false;
    }
    for (RoomId r = 0; r < inst.room_count(); ++r)
      if (inst.v(i, r) > 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

struct Triple {
  AgentId a;
  AgentId b;
  RoomId room;

  auto operator<=>(const Triple&) const = default;
};

/// n disjoint triples covering all agents and rooms, kept in canonical form:
/// a < b inside each triple and triples ordered by room.
class Assignment {
 public:
  /// Validates that the triples partition agents {0..agent_count-1} and rooms
  /// {0..agent_count/2-1}; canonicalizes.
  static Assignment from_triples(int agent_count, std::vector<Triple> triples) {
    if (agent_count <= 0 || agent_count % 2 != 0)
      throw Error(Errc::OddAgentCount, "agent count " + std::to_string(agent_count));
    const int room_count = agent_count / 2;
    if (static_cast<int>(triples.size()) != room_count)
      throw Error(Errc::InvalidAssignment, "expected " + std::to_string(room_count) +
                                               " triples, got " + std::to_string(triples.size()));
    Assignment mu;
    mu.roommate_.assign(agent_count, -1);
    mu.room_.assign(agent_count, -1);
    std::vector<bool> room_used(room_count, false);
    for (auto& t : triples) {
      if (t.a < 0 || t.a >= agent_count || t.b < 0 || t.b >= agent_count || t.a == t.b)
        throw Error(Errc::InvalidAssignment, "bad agent pair in triple");
      if (t.room < 0 || t.room >= room_count || room_used[t.room])
        throw Error(Errc::InvalidAssignment, "room " + std::to_string(t.room) + " missing or reused");
      if (mu.room_[t.a] != -1 || mu.room_[t.b] != -1)
        throw Error(Errc::InvalidAssignment, "agent assigned twice");
      room_used[t.room] = true;
      if (t.a > t.b) std::swap(t.a, t.b);
      mu.roommate_[t.a] = t.b;
      mu.roommate_[t.b] = t.a;
      mu.room_[t.a] = t.room;
      mu.room_[t.b] = t.room;
    }
    std::sort(triples.begin(), triples.end(),
              [](const Triple& x, const Triple& y) { return x.room < y.room; });
    mu.triples_ = std::move(triples);
    return mu;
  }

  /// The pairing {(2t, 2t+1, r_t)}.
  static Assignment identity(int agent_count) {
    std::vector<Triple> triples;
    for (int t = 0; t < agent_count / 2; ++t) triples.push_back({2 * t, 2 * t + 1, t});
    return from_triples(agent_count, std::move(triples));
  }

  int agent_count() const { return static_cast<int>(roommate_.size()); }
  int room_count() const { return static_cast<int>(triples_.size()); }
  std::span<const Triple> triples() const { return triples_; }
  AgentId roommate(AgentId i) const { return roommate_[i]; }
  RoomId room_of(AgentId i) const { return room_[i]; }
  const Triple& triple_in(RoomId r) const { return triples_[r]; }

  friend bool operator==(const Assignment& x, const Assignment& y) { return x.triples_ == y.triples_; }
  friend auto operator<=>(const Assignment& x, const Assignment& y) { return x.triples_ <=> y.triples_; }

 private:
  std::vector<Triple> triples_;
  std::vector<AgentId> roommate_;
  std::vector<RoomId> room_;
};

/// Same pairing up to a permutation of rooms.
inline bool same_pairing(const Assignment& x, const Assignment& y) {
  if (x.agent_count() != y.agent_count()) return false;
  for (AgentId i = 0; i < x.agent_count(); ++i)
    if (x.roommate(i) != y.roommate(i)) return false;
  return true;
}

inline Value utility(const Instance& inst, const Assignment& mu, AgentId i) {
  return inst.h(i, mu.roommate(i)) + inst.v(i, mu.room_of(i));
}

inline Value social_welfare(const Instance& inst, const Assignment& mu) {
  Value total = 0;
  for (AgentId i = 0; i < inst.agent_count(); ++i) total += utility(inst, mu, i);
  return total;
}

/// Welfare of the agents covered by a partial set of triples.
inline Value partial_welfare(const Instance& inst, std::span<const Triple> triples) {
  Value total = 0;
  for (const auto& t : triples)
    total += inst.h(t.a, t.b) + inst.h(t.b, t.a) + inst.v(t.a, t.room) + inst.v(t.b, t.room);
  return total;
}

inline std::vector<Value> utility_profile(const Instance& inst, const Assignment& mu) {
  std::vector<Value> out(inst.agent_count());
  for (AgentId i = 0; i < inst.agent_count(); ++i) out[i] = utility(inst, mu, i);
  return out;
}

/// Exchanges agents i and j across their rooms. Roommates and rooms stay put.
inline Assignment swap_agents(const Assignment& mu, AgentId i, AgentId j) {
  const int m = mu.agent_count();
  if (i < 0 || i >= m || j < 0 || j >= m) throw Error(Errc::InvalidArgument, "agent index out of range");
  if (mu.room_of(i) == mu.room_of(j))
    throw Error(Errc::SameRoomSwap, "agents " + std::to_string(i) + " and " + std::to_string(j) +
                                        " share room " + std::to_string(mu.room_of(i)));
  std::vector<Triple> triples(mu.triples().begin(), mu.triples().end());
  for (auto& t : triples) {
    for (AgentId* slot : {&t.a, &t.b}) {
      if (*slot == i) *slot = j;
      else if (*slot == j) *slot = i;
    }
  }
  return Assignment::from_triples(m, std::move(triples));
}

/// Utility agent i would have after swapping with j, without building the
/// swapped assignment.
inline Value utility_after_swap(const Instance& inst, const Assignment& mu, AgentId i, AgentId j) {
  return inst.h(i, mu.roommate(j)) + inst.v(i, mu.room_of(j));
}

// ---------------------------------------------------------------------------

enum class StepKind { Pick, Swap, TradeCycle, Removal, NoOp };

constexpr std::string_view to_string(StepKind kind) {
  switch (kind) {
    case StepKind::Pick: return "pick";
    case StepKind::Swap: return "swap";
    case StepKind::TradeCycle: return "trade-cycle";
    case StepKind::Removal: return "removal";
    case StepKind::NoOp: return "no-op";
  }
  return "unknown";
}

struct TraceStep {
  StepKind kind;
  std::vector<AgentId> participants;
  Value sw_before = 0;
  Value sw_after = 0;
  /// Swapping only: the slack quantity X of the two swappers.
  std::optional<Value> slack;
  /// For picks: the room taken.
  std::optional<RoomId> room;
};

struct MechanismTrace {
  std::vector<TraceStep> steps;

  std::size_t count(StepKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(steps.begin(), steps.end(), [kind](const TraceStep& s) { return s.kind == kind; }));
  }
};

struct MechanismResult {
  Assignment assignment;
  MechanismTrace trace;
};

}  // namespace roommates

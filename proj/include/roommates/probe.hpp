#pragma once

// Strategy-proofness probing: run a mechanism on the truthful instance and on
// instances where one agent's rows are replaced, and compare that agent's
// utility under its true values.

#include <algorithm>
#include <atomic>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "roommates/error.hpp"
#include "roommates/model.hpp"
#include "roommates/solve.hpp"

namespace roommates {

struct Misreport {
  std::vector<Value> h_row;
  std::vector<Value> v_row;

  bool operator==(const Misreport&) const = default;
};

struct ManipulationCheck {
  bool improved = false;
  Value truthful = 0;
  Value manipulated = 0;
};

inline ManipulationCheck verify_manipulation(const Instance& inst, const Mechanism& mech, AgentId agent,
                                             const Misreport& lie) {
  if (agent < 0 || agent >= inst.agent_count()) throw Error(Errc::InvalidArgument, "agent out of range");
  const Instance reported = inst.with_rows(agent, lie.h_row, lie.v_row);
  const Value truthful = utility(inst, mech(inst), agent);
  const Value manipulated = utility(inst, mech(reported), agent);
  return {manipulated > truthful, truthful, manipulated};
}

enum class SearchSpace { Permutations, Grid };

struct SearchConfig {
  SearchSpace space = SearchSpace::Permutations;
  Value grid_max = 1;
  std::uint64_t budget = 2'000'000;
  int jobs = 1;
};

struct ManipulationFound {
  Misreport misreport;
  ManipulationCheck check;
  std::uint64_t index = 0;  // position in enumeration order
};

struct SearchOutcome {
  std::optional<ManipulationFound> found;
  std::uint64_t evaluated = 0;  // candidates the mechanism accepted
  std::uint64_t rejected = 0;   // candidates the mechanism threw on
};

namespace detail {

// Number of distinct orderings of `values`, or nullopt past `limit`.
inline std::optional<std::uint64_t> distinct_permutations(std::vector<Value> values, std::uint64_t limit) {
  std::sort(values.begin(), values.end());
  unsigned __int128 count = 1;
  std::size_t run = 0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    run = (k > 0 && values[k] == values[k - 1]) ? run + 1 : 1;
    count = count * (k + 1) / run;  // multinomial of the prefix, always integral
    if (count > limit) return std::nullopt;
  }
  return static_cast<std::uint64_t>(count);
}

inline std::optional<std::uint64_t> checked_power(std::uint64_t base, std::size_t exp, std::uint64_t limit) {
  std::uint64_t out = 1;
  for (std::size_t k = 0; k < exp; ++k) {
    if (base != 0 && out > limit / base) return std::nullopt;
    out *= base;
  }
  return out;
}

// Streams misreports in deterministic order.
class MisreportStream {
 public:
  MisreportStream(const Instance& inst, AgentId agent, const SearchConfig& cfg)
      : agent_(agent), m_(inst.agent_count()), n_(inst.room_count()), cfg_(cfg) {
    for (AgentId j = 0; j < m_; ++j)
      if (j != agent) h_off_.push_back(inst.h(agent, j));
    v_.assign(inst.v_row(agent).begin(), inst.v_row(agent).end());
    if (cfg.space == SearchSpace::Permutations) {
      std::sort(h_off_.begin(), h_off_.end());
      std::sort(v_.begin(), v_.end());
    } else {
      if (cfg.grid_max < 0 || cfg.grid_max > kBig) throw Error(Errc::InvalidArgument, "grid max out of range");
      std::fill(h_off_.begin(), h_off_.end(), 0);
      std::fill(v_.begin(), v_.end(), 0);
    }
  }

  std::optional<std::uint64_t> size() const {
    const auto limit = cfg_.budget;
    if (cfg_.space == SearchSpace::Grid)
      return checked_power(static_cast<std::uint64_t>(cfg_.grid_max) + 1, h_off_.size() + v_.size(), limit);
    const auto a = distinct_permutations(h_off_, limit);
    const auto b = distinct_permutations(v_, limit);
    if (!a || !b || (*b != 0 && *a > limit / *b)) return std::nullopt;
    return *a * *b;
  }

  std::optional<Misreport> next() {
    if (done_) return std::nullopt;
    Misreport out{expand_h(), v_};
    advance();
    return out;
  }

 private:
  std::vector<Value> expand_h() const {
    std::vector<Value> row;
    row.reserve(m_);
    std::size_t k = 0;
    for (AgentId j = 0; j < m_; ++j) row.push_back(j == agent_ ? 0 : h_off_[k++]);
    return row;
  }

  // h varies slowest, v fastest.
  void advance() {
    if (cfg_.space == SearchSpace::Permutations) {
      if (std::next_permutation(v_.begin(), v_.end())) return;
      if (std::next_permutation(h_off_.begin(), h_off_.end())) return;
      done_ = true;
      return;
    }
    if (odometer(v_)) return;
    if (odometer(h_off_)) return;
    done_ = true;
  }

  bool odometer(std::vector<Value>& digits) const {
    for (std::size_t k = digits.size(); k-- > 0;) {
      if (digits[k] < cfg_.grid_max) {
        ++digits[k];
        return true;
      }
      digits[k] = 0;
    }
    return false;
  }

  AgentId agent_;
  int m_;
  int n_;
  SearchConfig cfg_;
  std::vector<Value> h_off_;
  std::vector<Value> v_;
  bool done_ = false;
};

}  // namespace detail

/// Number of misreports the search would enumerate; SpaceTooLarge past the budget.
inline std::uint64_t search_space_size(const Instance& inst, AgentId agent, const SearchConfig& cfg) {
  const auto size = detail::MisreportStream(inst, agent, cfg).size();
  if (!size)
    throw Error(Errc::SpaceTooLarge, "misreport space exceeds the budget of " + std::to_string(cfg.budget));
  return *size;
}

/// First beneficial misreport in enumeration order. Misreports on which the
/// mechanism throws are skipped; the truthful run must succeed.
inline SearchOutcome manipulation_search(const Instance& inst, const Mechanism& mech, AgentId agent,
                                         const SearchConfig& cfg = {}) {
  if (agent < 0 || agent >= inst.agent_count()) throw Error(Errc::InvalidArgument, "agent out of range");
  search_space_size(inst, agent, cfg);
  const Value truthful = utility(inst, mech(inst), agent);

  detail::MisreportStream stream(inst, agent, cfg);
  const int jobs = std::max(1, cfg.jobs);
  const std::size_t batch_size = jobs == 1 ? 1 : 256 * static_cast<std::size_t>(jobs);
  SearchOutcome outcome;
  std::uint64_t base = 0;

  struct Slot {
    Misreport lie;
    std::optional<Value> got;  // nullopt: mechanism rejected the report
  };

  while (true) {
    std::vector<Slot> batch;
    while (batch.size() < batch_size) {
      auto lie = stream.next();
      if (!lie) break;
      batch.push_back({std::move(*lie), std::nullopt});
    }
    if (batch.empty()) break;

    auto evaluate = [&](Slot& slot) {
      try {
        const Instance reported = inst.with_rows(agent, slot.lie.h_row, slot.lie.v_row);
        slot.got = utility(inst, mech(reported), agent);
      } catch (const Error&) {
        slot.got = std::nullopt;
      }
    };
    if (jobs == 1) {
      for (auto& slot : batch) evaluate(slot);
    } else {
      std::atomic<std::size_t> cursor{0};
      std::vector<std::thread> pool;
      for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
          for (std::size_t k = cursor++; k < batch.size(); k = cursor++) evaluate(batch[k]);
        });
      for (auto& th : pool) th.join();
    }

    for (std::size_t k = 0; k < batch.size(); ++k) {
      if (!batch[k].got) {
        ++outcome.rejected;
        continue;
      }
      ++outcome.evaluated;
      if (*batch[k].got > truthful) {
        outcome.found = ManipulationFound{std::move(batch[k].lie), {true, truthful, *batch[k].got}, base + k};
        return outcome;
      }
    }
    base += batch.size();
  }
  return outcome;
}

}  // namespace roommates

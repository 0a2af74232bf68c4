#pragma once

// Seeded instance generators. Sampling uses mt19937_64 with hand-rolled
// rejection so the streams match across standard libraries.

#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "roommates/error.hpp"
#include "roommates/model.hpp"

namespace roommates {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, bound].
  std::uint64_t below_or_equal(std::uint64_t bound) {
    if (bound == UINT64_MAX) return engine_();
    const std::uint64_t span = bound + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % span;
  }

  /// Uniform on [0, 1) with 53 bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

namespace detail {

inline void require_agent_count(int two_n) {
  if (two_n < 2 || two_n % 2 != 0)
    throw Error(Errc::OddAgentCount, "agent count must be even and at least 2, got " + std::to_string(two_n));
}

inline bool row_is_strict(const std::vector<Value>& h_row, const std::vector<Value>& v_row, AgentId self) {
  std::set<Value> seen;
  for (AgentId j = 0; j < static_cast<int>(h_row.size()); ++j) {
    if (j == self) continue;
    for (Value rv : v_row)
      if (!seen.insert(h_row[j] + rv).second) return false;
  }
  return true;
}

}  // namespace detail

struct RandomConfig {
  int two_n = 4;
  Value max_h = 10;
  Value max_v = 10;
  bool strict = false;
  int max_attempts = 100'000;  // per agent row when strict
};

/// Uniform values in [0, max]. With `strict`, each agent's row is redrawn until
/// all of its (roommate, room) utilities differ.
inline Instance gen_random(const RandomConfig& cfg, std::uint64_t seed) {
  detail::require_agent_count(cfg.two_n);
  if (cfg.max_h < 0 || cfg.max_v < 0 || cfg.max_h > kBig || cfg.max_v > kBig)
    throw Error(Errc::InvalidArgument, "value bounds must lie in [0, BIG]");
  const int m = cfg.two_n;
  const int n = m / 2;
  if (cfg.strict && static_cast<Value>(m - 1) * n > cfg.max_h + cfg.max_v + 1)
    throw Error(Errc::InvalidArgument, "value range too small for strict preferences");

  Rng rng(seed);
  std::vector<std::vector<Value>> h(m, std::vector<Value>(m, 0));
  std::vector<std::vector<Value>> v(m, std::vector<Value>(n, 0));
  for (AgentId i = 0; i < m; ++i) {
    for (int attempt = 0;; ++attempt) {
      if (attempt == cfg.max_attempts)
        throw Error(Errc::InvalidArgument, "could not draw a strict row for agent " + std::to_string(i));
      for (AgentId j = 0; j < m; ++j)
        h[i][j] = j == i ? 0 : static_cast<Value>(rng.below_or_equal(static_cast<std::uint64_t>(cfg.max_h)));
      for (RoomId r = 0; r < n; ++r) v[i][r] = static_cast<Value>(rng.below_or_equal(static_cast<std::uint64_t>(cfg.max_v)));
      if (!cfg.strict || detail::row_is_strict(h[i], v[i], i)) break;
    }
  }
  return make_instance(std::move(h), std::move(v));
}

inline Instance gen_random(int two_n, Value max_h, Value max_v, std::uint64_t seed, bool strict = false) {
  return gen_random(RandomConfig{two_n, max_h, max_v, strict}, seed);
}

/// True iff every agent's (roommate, room) utilities are pairwise distinct.
inline bool is_strict(const Instance& inst) {
  for (AgentId i = 0; i < inst.agent_count(); ++i) {
    std::vector<Value> h(inst.h_row(i).begin(), inst.h_row(i).end());
    std::vector<Value> v(inst.v_row(i).begin(), inst.v_row(i).end());
    if (!detail::row_is_strict(h, v, i)) return false;
  }
  return true;
}

/// Symmetric 0/1 roommate values and 0/1 room values.
inline Instance gen_binary_symmetric(int two_n, double density_h, double density_v, std::uint64_t seed) {
  detail::require_agent_count(two_n);
  if (!(density_h >= 0.0 && density_h <= 1.0 && density_v >= 0.0 && density_v <= 1.0))
    throw Error(Errc::InvalidArgument, "densities must lie in [0, 1]");
  const int m = two_n;
  const int n = m / 2;
  Rng rng(seed);
  std::vector<std::vector<Value>> h(m, std::vector<Value>(m, 0));
  std::vector<std::vector<Value>> v(m, std::vector<Value>(n, 0));
  for (AgentId i = 0; i < m; ++i)
    for (AgentId j = i + 1; j < m; ++j) h[i][j] = h[j][i] = rng.bernoulli(density_h) ? 1 : 0;
  for (AgentId i = 0; i < m; ++i)
    for (RoomId r = 0; r < n; ++r) v[i][r] = rng.bernoulli(density_v) ? 1 : 0;
  return make_instance(std::move(h), std::move(v));
}

/// Each agent values its initial roommate at 1, its initial room at 0 and
/// every other room at 2. Starting from the identity assignment every
/// cross-room pair is 2PS blocking, but nobody is in a 4PS blocking pair.
inline std::pair<Instance, Assignment> gen_cttcr_2ps_family(int n) {
  if (n < 2) throw Error(Errc::InvalidArgument, "family needs n >= 2");
  const int m = 2 * n;
  std::vector<std::vector<Value>> h(m, std::vector<Value>(m, 0));
  std::vector<std::vector<Value>> v(m, std::vector<Value>(n, 2));
  for (AgentId i = 0; i < m; ++i) {
    h[i][i ^ 1] = 1;
    v[i][i / 2] = 0;
  }
  return {make_instance(std::move(h), std::move(v)), Assignment::identity(m)};
}

}  // namespace roommates

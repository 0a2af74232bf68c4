#pragma once

// Independent brute force used as ground truth in tests. Works on plain
// matrices and enumerates assignments by permuting agents over seats, which
// is a different route from the library's pairing enumeration.

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <vector>

namespace brute {

using Mat = std::vector<std::vector<long long>>;

struct Inst {
  Mat h;  // m x m
  Mat v;  // m x n
  int m() const { return static_cast<int>(h.size()); }
  int n() const { return m() / 2; }
};

// Sorted triples {a < b, room}, sorted by room.
using Asg = std::vector<std::array<int, 3>>;

inline Asg canon(Asg t) {
  for (auto& x : t)
    if (x[0] > x[1]) std::swap(x[0], x[1]);
  std::sort(t.begin(), t.end(), [](const auto& x, const auto& y) { return x[2] < y[2]; });
  return t;
}

/// Seats 2r and 2r+1 belong to room r.
inline std::vector<Asg> all_assignments(int m) {
  std::vector<int> p(m);
  std::iota(p.begin(), p.end(), 0);
  std::set<Asg> seen;
  do {
    Asg a;
    for (int r = 0; r < m / 2; ++r) a.push_back({p[2 * r], p[2 * r + 1], r});
    seen.insert(canon(a));
  } while (std::next_permutation(p.begin(), p.end()));
  return {seen.begin(), seen.end()};
}

inline int mate(const Asg& a, int i) {
  for (const auto& t : a) {
    if (t[0] == i) return t[1];
    if (t[1] == i) return t[0];
  }
  return -1;
}

inline int room(const Asg& a, int i) {
  for (const auto& t : a)
    if (t[0] == i || t[1] == i) return t[2];
  return -1;
}

inline long long util(const Inst& I, const Asg& a, int i) { return I.h[i][mate(a, i)] + I.v[i][room(a, i)]; }

inline long long welfare(const Inst& I, const Asg& a) {
  long long s = 0;
  for (int i = 0; i < I.m(); ++i) s += util(I, a, i);
  return s;
}

/// i and j trade places.
inline Asg swapped(Asg a, int i, int j) {
  for (auto& t : a)
    for (int k = 0; k < 2; ++k) {
      if (t[k] == i) t[k] = -1;
      else if (t[k] == j) t[k] = -2;
    }
  for (auto& t : a)
    for (int k = 0; k < 2; ++k) {
      if (t[k] == -1) t[k] = j;
      else if (t[k] == -2) t[k] = i;
    }
  return canon(a);
}

inline bool blocks_2ps(const Inst& I, const Asg& a, int i, int j) {
  if (room(a, i) == room(a, j)) return false;
  const Asg b = swapped(a, i, j);
  return util(I, b, i) > util(I, a, i) && util(I, b, j) > util(I, a, j);
}

inline bool blocks_4ps(const Inst& I, const Asg& a, int i, int j) {
  if (!blocks_2ps(I, a, i, j)) return false;
  const Asg b = swapped(a, i, j);
  const int mi = mate(a, i), mj = mate(a, j);
  return I.h[mi][mate(b, mi)] > I.h[mi][i] && I.h[mj][mate(b, mj)] > I.h[mj][j];
}

inline std::vector<std::pair<int, int>> blocking(const Inst& I, const Asg& a, bool four) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < I.m(); ++i)
    for (int j = i + 1; j < I.m(); ++j)
      if (four ? blocks_4ps(I, a, i, j) : blocks_2ps(I, a, i, j)) out.emplace_back(i, j);
  return out;
}

inline bool dominates(const Inst& I, const Asg& x, const Asg& y) {
  bool strict = false;
  for (int i = 0; i < I.m(); ++i) {
    const long long ux = util(I, x, i), uy = util(I, y, i);
    if (ux < uy) return false;
    if (ux > uy) strict = true;
  }
  return strict;
}

inline bool pareto_optimal(const Inst& I, const Asg& a, const std::vector<Asg>& all) {
  return std::none_of(all.begin(), all.end(), [&](const Asg& b) { return dominates(I, b, a); });
}

inline std::vector<Asg> pareto_front(const Inst& I) {
  const auto all = all_assignments(I.m());
  std::vector<Asg> out;
  for (const auto& a : all)
    if (pareto_optimal(I, a, all)) out.push_back(a);
  return out;
}

inline long long max_welfare(const Inst& I) {
  long long best = -1;
  for (const auto& a : all_assignments(I.m())) best = std::max(best, welfare(I, a));
  return best;
}

/// Max-weight perfect matching weight over a symmetric weight matrix.
inline long long max_matching_weight(const Mat& w) {
  const int m = static_cast<int>(w.size());
  std::vector<int> p(m);
  std::iota(p.begin(), p.end(), 0);
  long long best = -1;
  do {
    long long s = 0;
    for (int k = 0; k < m; k += 2) s += w[p[k]][p[k + 1]];
    best = std::max(best, s);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

/// Max weight of giving every agent a room, two agents per room.
inline long long max_one_two_weight(const Mat& v) {
  const int m = static_cast<int>(v.size());
  std::vector<int> seats(m);
  for (int k = 0; k < m; ++k) seats[k] = k / 2;
  long long best = -1;
  do {
    long long s = 0;
    for (int i = 0; i < m; ++i) s += v[i][seats[i]];
    best = std::max(best, s);
  } while (std::next_permutation(seats.begin(), seats.end()));
  return best;
}

}  // namespace brute

#pragma once

// Brute-force oracles for tests. They work on plain integer vectors with
// their own arithmetic (modulus 0 means the integers) and never call into the
// library's counting paths.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "sidonkit/core.hpp"

namespace oracle {

using Vec = std::vector<std::int64_t>;

inline std::int64_t sub(std::int64_t a, std::int64_t b, std::int64_t mod) {
  if (mod == 0) return a - b;
  return ((a - b) % mod + mod) % mod;
}

inline std::int64_t add(std::int64_t a, std::int64_t b, std::int64_t mod) {
  if (mod == 0) return a + b;
  return ((a + b) % mod + mod) % mod;
}

// Calls f(tuple) for every tuple in A^len.
template <class F>
void for_each_tuple(const Vec& a, std::size_t len, F&& f) {
  if (a.empty()) return;
  std::vector<std::size_t> idx(len, 0);
  Vec t(len);
  while (true) {
    for (std::size_t i = 0; i < len; ++i) t[i] = a[idx[i]];
    f(t, idx);
    std::size_t pos = 0;
    while (pos < len && ++idx[pos] == a.size()) idx[pos++] = 0;
    if (pos == len) return;
  }
}

// Number of 2k-tuples (x_1, x'_1, ..., x_k, x'_k) with equal differences.
inline std::uint64_t energy(const Vec& a, unsigned k, std::int64_t mod = 0) {
  std::uint64_t count = 0;
  for_each_tuple(a, 2 * k, [&](const Vec& t, const auto&) {
    const std::int64_t d = sub(t[0], t[1], mod);
    for (unsigned j = 1; j < k; ++j) {
      if (sub(t[2 * j], t[2 * j + 1], mod) != d) return;
    }
    ++count;
  });
  return count;
}

inline std::uint64_t sum_energy(const Vec& a, unsigned k, std::int64_t mod = 0) {
  std::uint64_t count = 0;
  for_each_tuple(a, 2 * k, [&](const Vec& t, const auto&) {
    const std::int64_t s = add(t[0], t[1], mod);
    for (unsigned j = 1; j < k; ++j) {
      if (add(t[2 * j], t[2 * j + 1], mod) != s) return;
    }
    ++count;
  });
  return count;
}

// Equal-difference 2k-tuples with all entries pairwise distinct.
inline std::uint64_t energy_prime(const Vec& a, unsigned k, std::int64_t mod = 0) {
  std::uint64_t count = 0;
  for_each_tuple(a, 2 * k, [&](const Vec& t, const auto& idx) {
    std::set<std::size_t> distinct(idx.begin(), idx.end());
    if (distinct.size() != idx.size()) return;
    const std::int64_t d = sub(t[0], t[1], mod);
    for (unsigned j = 1; j < k; ++j) {
      if (sub(t[2 * j], t[2 * j + 1], mod) != d) return;
    }
    ++count;
  });
  return count;
}

// Same counts as energy / sum_energy / energy_prime, enumerating the tuple
// pair by pair and abandoning it at the first mismatch. Fast enough for
// |A| = 10, k = 4.
inline std::uint64_t tuples_pruned(const Vec& a, unsigned k, std::int64_t mod, bool sums, bool distinct) {
  std::uint64_t count = 0;
  std::vector<char> used(a.size(), 0);
  auto op = [&](std::int64_t x, std::int64_t y) { return sums ? add(x, y, mod) : sub(x, y, mod); };
  std::function<void(unsigned, std::int64_t)> rec = [&](unsigned j, std::int64_t target) {
    if (j == k) {
      ++count;
      return;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (distinct && used[i]) continue;
      for (std::size_t i2 = 0; i2 < a.size(); ++i2) {
        if (distinct && (used[i2] || i2 == i)) continue;
        const std::int64_t v = op(a[i], a[i2]);
        if (j > 0 && v != target) continue;
        used[i] = used[i2] = 1;
        rec(j + 1, v);
        used[i] = used[i2] = 0;
      }
    }
  };
  rec(0, 0);
  return count;
}

inline std::map<std::int64_t, std::uint64_t> difference_counts(const Vec& a, std::int64_t mod = 0) {
  std::map<std::int64_t, std::uint64_t> r;
  for (auto x : a)
    for (auto y : a) ++r[sub(x, y, mod)];
  return r;
}

inline std::map<std::int64_t, std::uint64_t> sum_counts(const Vec& a, std::int64_t mod = 0) {
  std::map<std::int64_t, std::uint64_t> r;
  for (auto x : a)
    for (auto y : a) ++r[add(x, y, mod)];
  return r;
}

// Quadruples a1 + b1 = a2 + b2.
inline std::uint64_t common_energy(const Vec& a, const Vec& b) {
  std::uint64_t count = 0;
  for (auto a1 : a)
    for (auto a2 : a)
      for (auto b1 : b)
        for (auto b2 : b) count += (a1 + b1 == a2 + b2);
  return count;
}

inline bool is_b2g(const Vec& s, std::uint64_t g, std::int64_t mod = 0) {
  for (const auto& [d, c] : difference_counts(s, mod)) {
    if (d != 0 && c > g) return false;
  }
  return true;
}

// Largest subset with r_{B-B}(x) <= g for x != 0, by trying every subset.
inline std::size_t max_b2g_subset(const Vec& a, std::uint64_t g, std::int64_t mod = 0) {
  std::size_t best = 0;
  const std::size_t n = a.size();
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size <= best) continue;
    Vec s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s.push_back(a[i]);
    if (is_b2g(s, g, mod)) best = size;
  }
  return best;
}

// K_{k, g+1} in the bipartite Cayley graph of S on Z/N: left x, right y,
// edge iff y - x ∈ S. Searches k-sets of right vertices for g+1 common
// neighbours.
inline bool cayley_has_kkt(const Vec& s, std::int64_t n, unsigned k, std::uint64_t t) {
  std::vector<std::vector<char>> adj(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  for (std::int64_t x = 0; x < n; ++x)
    for (auto v : s) adj[static_cast<std::size_t>((x + v) % n)][static_cast<std::size_t>(x)] = 1;
  std::vector<std::int64_t> pick(k);
  // iterate over increasing k-tuples of right vertices
  std::function<bool(unsigned, std::int64_t)> rec = [&](unsigned depth, std::int64_t start) -> bool {
    if (depth == k) {
      std::uint64_t common = 0;
      for (std::int64_t x = 0; x < n; ++x) {
        bool all = true;
        for (auto y : pick) all = all && adj[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
        common += all;
      }
      return common >= t;
    }
    for (std::int64_t y = start; y < n; ++y) {
      pick[depth] = y;
      if (rec(depth + 1, y + 1)) return true;
    }
    return false;
  };
  return rec(0, 0);
}

inline Vec random_subset(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi, std::size_t size) {
  std::set<std::int64_t> s;
  std::uniform_int_distribution<std::int64_t> d(lo, hi);
  while (s.size() < size) s.insert(d(rng));
  return {s.begin(), s.end()};
}

inline sidonkit::GroundSet as_set(const Vec& v, std::int64_t mod = 0) {
  std::vector<sidonkit::Element> e(v.begin(), v.end());
  if (mod == 0) return sidonkit::GroundSet(sidonkit::AmbientSpec::integers(), e);
  return sidonkit::GroundSet(sidonkit::AmbientSpec::integers_mod(mod), e);
}

inline Vec as_vec(const sidonkit::GroundSet& s) {
  Vec v;
  for (const auto& e : s.elements()) v.push_back(e.x);
  return v;
}

}  // namespace oracle

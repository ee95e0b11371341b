#pragma once

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "pcf/instance.hpp"

namespace pcf {

/// SplitMix64 (Steele, Lea, Flood 2014). Chosen so that fixtures generated
/// from a seed are identical on every platform and standard library.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [lo, hi]; rejection sampling avoids modulo bias.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

 private:
  std::uint64_t state_;
};

namespace detail {

inline std::uint64_t pair_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

inline std::vector<Num> random_penalties(SplitMix64& rng, int n, std::int64_t pmax) {
  std::vector<Num> p;
  p.reserve(n);
  for (int i = 0; i < n; ++i) p.emplace_back(static_cast<long>(rng.uniform(0, pmax)));
  return p;
}

}  // namespace detail

/// Random simple graph with exactly m edges, integer weights in [0, wmax] and
/// integer penalties in [0, pmax]. Deterministic in `seed`.
inline Instance generate_random(std::uint64_t seed, int n, int m, std::int64_t wmax, std::int64_t pmax) {
  const std::int64_t max_edges = static_cast<std::int64_t>(n) * (n - 1) / 2;
  if (n < 0 || m < 0 || m > max_edges)
    throw Error(ErrorCode::kTooManyEdges, std::to_string(m) + " edges requested on " + std::to_string(n) + " vertices");
  SplitMix64 rng(seed);
  std::vector<Num> penalties = detail::random_penalties(rng, n, pmax);
  std::vector<Edge> edges;
  edges.reserve(m);

  if (2 * static_cast<std::int64_t>(m) > max_edges) {
    // Dense request: pick from the full pair list by partial Fisher-Yates.
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    for (int i = 0; i < m; ++i) {
      const auto j = static_cast<std::size_t>(rng.uniform(i, static_cast<std::int64_t>(pairs.size()) - 1));
      std::swap(pairs[i], pairs[j]);
      edges.push_back({pairs[i].first, pairs[i].second, Num(static_cast<long>(rng.uniform(0, wmax)))});
    }
  } else {
    std::unordered_set<std::uint64_t> used;
    while (static_cast<int>(edges.size()) < m) {
      const int u = static_cast<int>(rng.uniform(0, n - 1));
      const int v = static_cast<int>(rng.uniform(0, n - 1));
      if (u == v || !used.insert(detail::pair_key(u, v)).second) continue;
      edges.push_back({std::min(u, v), std::max(u, v), Num(static_cast<long>(rng.uniform(0, wmax)))});
    }
  }
  return Instance(std::move(penalties), std::move(edges));
}

/// Connected random graph: a random spanning tree plus m - (n - 1) extra edges.
inline Instance generate_connected(std::uint64_t seed, int n, int m, std::int64_t wmax, std::int64_t pmax) {
  const std::int64_t max_edges = static_cast<std::int64_t>(n) * (n - 1) / 2;
  if (n < 1 || m < n - 1 || m > max_edges)
    throw Error(ErrorCode::kTooManyEdges, "cannot build a connected graph with " + std::to_string(m) + " edges on " +
                                              std::to_string(n) + " vertices");
  SplitMix64 rng(seed);
  std::vector<Num> penalties = detail::random_penalties(rng, n, pmax);
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> used;
  for (int v = 1; v < n; ++v) {
    const int u = static_cast<int>(rng.uniform(0, v - 1));
    used.insert(detail::pair_key(u, v));
    edges.push_back({u, v, Num(static_cast<long>(rng.uniform(0, wmax)))});
  }
  while (static_cast<int>(edges.size()) < m) {
    const int u = static_cast<int>(rng.uniform(0, n - 1));
    const int v = static_cast<int>(rng.uniform(0, n - 1));
    if (u == v || !used.insert(detail::pair_key(u, v)).second) continue;
    edges.push_back({std::min(u, v), std::max(u, v), Num(static_cast<long>(rng.uniform(0, wmax)))});
  }
  return Instance(std::move(penalties), std::move(edges));
}

/// Random tree on n vertices (each vertex i > 0 attached to a uniform earlier vertex).
inline Instance generate_tree(std::uint64_t seed, int n, std::int64_t wmax, std::int64_t pmax) {
  return generate_connected(seed, n, n - 1, wmax, pmax);
}

}  // namespace pcf

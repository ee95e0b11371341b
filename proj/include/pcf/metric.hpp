#pragma once

#include <optional>
#include <vector>

#include "pcf/instance.hpp"

namespace pcf {

/// Shortest-path completion of a connected instance.
///
/// `closure` is the complete graph on the same vertices (same penalties and
/// labels) whose edge {u,v} weighs dist(u,v); edges are listed in (u,v)
/// lexicographic order. `path(u, v)` recovers a witness walk in the original
/// graph.
struct MetricClosure {
  Instance closure;
  std::vector<std::vector<int>> next;  // next[u][v]: first hop on a shortest u->v path

  std::vector<VertexId> path(VertexId u, VertexId v) const {
    std::vector<VertexId> out{u};
    while (u != v) {
      u = next[u][v];
      out.push_back(u);
    }
    return out;
  }
};

/// Floyd-Warshall over exact rationals, O(n^3).
inline MetricClosure metric_closure(const Instance& g) {
  const int n = g.n();
  std::vector<std::vector<std::optional<Num>>> dist(n, std::vector<std::optional<Num>>(n));
  std::vector<std::vector<int>> next(n, std::vector<int>(n, -1));
  for (int v = 0; v < n; ++v) {
    dist[v][v] = Num(0);
    next[v][v] = v;
  }
  for (const Edge& e : g.edges()) {
    if (!dist[e.u][e.v] || e.w < *dist[e.u][e.v]) {
      dist[e.u][e.v] = e.w;
      dist[e.v][e.u] = e.w;
      next[e.u][e.v] = e.v;
      next[e.v][e.u] = e.u;
    }
  }
  for (int x = 0; x < n; ++x)
    for (int u = 0; u < n; ++u) {
      if (!dist[u][x]) continue;
      for (int v = 0; v < n; ++v) {
        if (!dist[x][v]) continue;
        Num via = *dist[u][x] + *dist[x][v];
        if (!dist[u][v] || via < *dist[u][v]) {
          dist[u][v] = std::move(via);
          next[u][v] = next[u][x];
        }
      }
    }

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (!dist[u][v]) throw Error(ErrorCode::kDisconnected, "metric closure needs a connected graph");
      edges.push_back({u, v, *dist[u][v]});
    }
  std::vector<Num> penalties(g.penalties().begin(), g.penalties().end());
  std::vector<std::int64_t> labels(g.labels().begin(), g.labels().end());
  return {Instance(std::move(penalties), std::move(edges), std::move(labels)), std::move(next)};
}

/// True when the instance is complete and every triple obeys the triangle inequality.
inline bool is_metric(const Instance& g) {
  const int n = g.n();
  if (static_cast<long>(g.m()) != static_cast<long>(n) * (n - 1) / 2) return false;
  std::vector<std::vector<Num>> d(n, std::vector<Num>(n));
  for (const Edge& e : g.edges()) {
    d[e.u][e.v] = e.w;
    d[e.v][e.u] = e.w;
  }
  for (int x = 0; x < n; ++x)
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (d[u][x] + d[x][v] < d[u][v]) return false;
  return true;
}

}  // namespace pcf

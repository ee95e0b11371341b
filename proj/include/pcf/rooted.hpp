#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "pcf/instance.hpp"
#include "pcf/moat.hpp"

namespace pcf {

namespace detail {

inline std::vector<char> root_mask(const Instance& g, std::span<const VertexId> roots) {
  std::vector<char> is_root(g.n(), 0);
  for (VertexId r : roots) {
    if (r < 0 || r >= g.n()) throw Error(ErrorCode::kInvalidRoot, "root " + std::to_string(r) + " is not a vertex");
    if (is_root[r]) throw Error(ErrorCode::kInvalidRoot, "root " + std::to_string(r) + " listed twice");
    is_root[r] = 1;
  }
  return is_root;
}

inline void check_growth_of(const Instance& g, const Growth& gr) {
  if (gr.n != g.n() || gr.m != g.m()) throw Error(ErrorCode::kInconsistent, "growth was not produced from this instance");
}

}  // namespace detail

/// Splits grown trees until each holds exactly one root.
///
/// Keeps the final growth components that contain a root. While a tree holds
/// two or more roots, take its smallest root r and the smallest root reachable
/// from r without passing another root, and delete the most recently added
/// edge on the path between them. Root-free components are dropped; their
/// vertices end up unspanned. Deleted edges are appended to `removed` if given.
inline Forest k_forest_step(const Instance& g, const Growth& gr, std::span<const VertexId> roots,
                            std::vector<EdgeId>* removed = nullptr) {
  detail::check_growth_of(g, gr);
  const std::vector<char> is_root = detail::root_mask(g, roots);
  const int n = g.n();

  std::vector<char> keep_vertex(n, 0);
  for (ComponentId c : gr.final_components) {
    const Component& comp = gr.component(c);
    if (std::any_of(comp.vertices.begin(), comp.vertices.end(), [&](VertexId v) { return is_root[v]; }))
      for (VertexId v : comp.vertices) keep_vertex[v] = 1;
  }
  std::vector<char> keep_edge(g.m(), 0);
  for (EdgeId e : gr.forest_edges)
    if (keep_vertex[g.edge(e).u]) keep_edge[e] = 1;

  std::vector<VertexId> sorted_roots(roots.begin(), roots.end());
  std::sort(sorted_roots.begin(), sorted_roots.end());

  std::vector<long> seen(n, -1);
  long stamp = 0;
  std::vector<EdgeId> via(n, -1);
  std::vector<VertexId> queue;
  for (;;) {
    // Smallest root whose tree holds another root: its BFS (not crossing roots) finds one.
    bool split = false;
    for (VertexId r : sorted_roots) {
      queue.assign(1, r);
      const long mark = ++stamp;
      seen[r] = mark;
      VertexId partner = -1;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const VertexId x = queue[head];
        for (const Incidence& inc : g.incident(x)) {
          if (!keep_edge[inc.edge] || seen[inc.neighbor] == mark) continue;
          seen[inc.neighbor] = mark;
          via[inc.neighbor] = inc.edge;
          if (is_root[inc.neighbor]) {
            if (partner < 0 || inc.neighbor < partner) partner = inc.neighbor;
          } else {
            queue.push_back(inc.neighbor);
          }
        }
      }
      if (partner < 0) continue;
      EdgeId latest = -1;
      for (VertexId x = partner; x != r;) {
        const EdgeId e = via[x];
        if (latest < 0 || gr.edge_event[e] > gr.edge_event[latest]) latest = e;
        x = g.edge(e).other(x);
      }
      keep_edge[latest] = 0;
      if (removed) removed->push_back(latest);
      split = true;
      break;
    }
    if (!split) break;
  }

  std::vector<VertexId> spanned;
  for (VertexId v = 0; v < n; ++v)
    if (keep_vertex[v]) spanned.push_back(v);
  std::vector<EdgeId> edges;
  for (EdgeId e = 0; e < g.m(); ++e)
    if (keep_edge[e]) edges.push_back(e);
  return Forest::make(g, std::move(spanned), std::move(edges));
}

/// Reverse deletion over the output of k_forest_step.
///
/// Edges are scanned from the latest addition backwards. For an edge e that
/// is still present, look at the two components e merged. If one of them was
/// inactive at that moment, holds no root, and touches no other edge still in
/// the forest, then e and that component's vertices are removed.
inline Forest reverse_delete(const Instance& g, const Growth& gr, const Forest& forest,
                             std::span<const VertexId> roots) {
  detail::check_growth_of(g, gr);
  const std::vector<char> is_root = detail::root_mask(g, roots);
  check_forest_of(g, forest);

  std::vector<char> in_vertex(g.n(), 0);
  std::vector<char> in_edge(g.m(), 0);
  for (VertexId v : forest.spanned()) in_vertex[v] = 1;
  for (EdgeId e : forest.edges()) {
    if (gr.edge_event[e] < 0) throw Error(ErrorCode::kInconsistent, "forest edge was never added by growth");
    in_edge[e] = 1;
  }

  std::vector<EdgeId> order(forest.edges().begin(), forest.edges().end());
  std::sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) { return gr.edge_event[a] > gr.edge_event[b]; });

  std::vector<char> in_side(g.n(), 0);
  for (EdgeId e : order) {
    if (!in_edge[e]) continue;
    const Event& ev = gr.events[gr.edge_event[e]];
    const std::pair<ComponentId, bool> sides[2] = {{ev.left, ev.left_active}, {ev.right, ev.right_active}};
    for (const auto& [side, was_active] : sides) {
      if (was_active) continue;
      const Component& c = gr.component(side);
      if (std::any_of(c.vertices.begin(), c.vertices.end(), [&](VertexId v) { return is_root[v]; })) continue;

      for (VertexId v : c.vertices) in_side[v] = 1;
      bool leaf = true;
      for (VertexId v : c.vertices) {
        for (const Incidence& inc : g.incident(v))
          if (inc.edge != e && in_edge[inc.edge] && !in_side[inc.neighbor]) leaf = false;
        if (!leaf) break;
      }
      if (leaf) {
        in_edge[e] = 0;
        for (VertexId v : c.vertices) {
          in_vertex[v] = 0;
          for (const Incidence& inc : g.incident(v)) in_edge[inc.edge] = 0;
        }
      }
      for (VertexId v : c.vertices) in_side[v] = 0;
      if (leaf) break;
    }
  }

  std::vector<VertexId> spanned;
  for (VertexId v = 0; v < g.n(); ++v)
    if (in_vertex[v]) spanned.push_back(v);
  std::vector<EdgeId> edges;
  for (EdgeId e : forest.edges())
    if (in_edge[e]) edges.push_back(e);
  return Forest::make(g, std::move(spanned), std::move(edges));
}

/// Rooted solver: rootless growth, then the K-forest step, then reverse deletion.
inline Forest solve_rpcf(const Instance& g, const Growth& gr, std::span<const VertexId> roots) {
  if (roots.empty() || static_cast<int>(roots.size()) > g.n())
    throw Error(ErrorCode::kKOutOfRange, "need between 1 and n roots");
  const Forest split = k_forest_step(g, gr, roots);
  return reverse_delete(g, gr, split, roots);
}

inline Forest solve_rpcf(const Instance& g, std::span<const VertexId> roots) {
  if (roots.empty() || static_cast<int>(roots.size()) > g.n())
    throw Error(ErrorCode::kKOutOfRange, "need between 1 and n roots");
  return solve_rpcf(g, rootless_grow(g), roots);
}

struct RootedCertificate {
  Num lhs;  // w(F_R) + 2 pi(unspanned)
  Num rhs;  // 2 * sum of y_S over family members disjoint from the roots
  bool holds() const { return lhs <= rhs; }
};

/// The dual certificate behind the rooted 2-LMP guarantee.
inline RootedCertificate rooted_certificate(const Instance& g, const Growth& gr, const Forest& f,
                                            std::span<const VertexId> roots) {
  const std::vector<char> is_root = detail::root_mask(g, roots);
  RootedCertificate cert;
  cert.lhs = lmp_value(g, f, Num(2));
  Num packed;
  for (const Component& c : gr.family)
    if (std::none_of(c.vertices.begin(), c.vertices.end(), [&](VertexId v) { return is_root[v]; })) packed += c.y;
  cert.rhs = Num(2) * packed;
  return cert;
}

}  // namespace pcf

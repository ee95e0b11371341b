#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pcf/instance.hpp"
#include "pcf/prune.hpp"
#include "pcf/rooted.hpp"
#include "pcf/sweep.hpp"

namespace pcf {

/// Exhaustive solvers for tiny instances. Each refuses inputs past its size
/// guard instead of degrading, and each witness is re-evaluated through the
/// instance functions before it is returned.

inline constexpr int kUrpcfGuard = 16;       // vertices
inline constexpr int kRpcfGuard = 20;        // edges
inline constexpr int kNwForestGuard = 14;    // tree vertices
inline constexpr int kSweepBoundGuard = 10;  // vertices

struct OracleResult {
  Num value;
  Forest witness;
  int k = 0;  // component count of the witness
};

namespace detail {

/// Edge ids sorted by (weight, id): Kruskal order.
inline std::vector<EdgeId> kruskal_order(const Instance& g) {
  std::vector<EdgeId> order(g.m());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) { return g.edge(a).w < g.edge(b).w; });
  return order;
}

/// Minimum spanning forest of G[mask], edges in Kruskal order.
inline std::vector<EdgeId> induced_msf(const Instance& g, std::span<const EdgeId> order, std::uint32_t mask) {
  DisjointSets sets(g.n());
  std::vector<EdgeId> msf;
  for (EdgeId e : order) {
    const Edge& edge = g.edge(e);
    if (!(mask >> edge.u & 1u) || !(mask >> edge.v & 1u)) continue;
    if (sets.unite(edge.u, edge.v)) msf.push_back(e);
  }
  return msf;
}

inline std::vector<VertexId> mask_vertices(int n, std::uint32_t mask) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < n; ++v)
    if (mask >> v & 1u) out.push_back(v);
  return out;
}

inline void guard(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kGuard, what);
}

/// Cheapest k-component forest spanning `mask`, or nullopt if none exists:
/// the induced MSF with its heaviest surplus edges dropped.
inline std::optional<std::vector<EdgeId>> cheapest_forest(const Instance& g, std::span<const EdgeId> order,
                                                          std::uint32_t mask, int k) {
  const int size = std::popcount(mask);
  std::vector<EdgeId> msf = induced_msf(g, order, mask);
  const int c = size - static_cast<int>(msf.size());
  if (k < c || k > size) return std::nullopt;
  msf.resize(msf.size() - (k - c));
  return msf;
}

}  // namespace detail

/// min over K-component forests F of w(F) + pi(V \ V(F)).
inline OracleResult opt_urpcf(const Instance& g, int k) {
  detail::guard(g.n() <= kUrpcfGuard, "opt_urpcf handles at most " + std::to_string(kUrpcfGuard) + " vertices");
  if (k < 1 || k > g.n()) throw Error(ErrorCode::kKOutOfRange, "K = " + std::to_string(k) + " is outside [1, " + std::to_string(g.n()) + "]");
  const std::vector<EdgeId> order = detail::kruskal_order(g);
  std::optional<Num> best;
  std::uint32_t best_mask = 0;
  std::vector<EdgeId> best_edges;
  for (std::uint32_t mask = 1; mask < (1u << g.n()); ++mask) {
    auto edges = detail::cheapest_forest(g, order, mask, k);
    if (!edges) continue;
    Num value;
    for (EdgeId e : *edges) value += g.edge(e).w;
    for (VertexId v = 0; v < g.n(); ++v)
      if (!(mask >> v & 1u)) value += g.penalty(v);
    if (!best || value < *best) {
      best = std::move(value);
      best_mask = mask;
      best_edges = std::move(*edges);
    }
  }
  Forest witness = Forest::make(g, detail::mask_vertices(g.n(), best_mask), std::move(best_edges));
  Num value = cost_plus_penalty(g, witness);
  if (value != *best || witness.k() != k) throw Error(ErrorCode::kInconsistent, "oracle witness does not re-evaluate");
  return {std::move(value), std::move(witness), k};
}

/// min over forests whose every component holds exactly one root.
inline OracleResult opt_rpcf(const Instance& g, std::span<const VertexId> roots) {
  detail::guard(g.m() <= kRpcfGuard, "opt_rpcf handles at most " + std::to_string(kRpcfGuard) + " edges");
  const std::vector<char> is_root = detail::root_mask(g, roots);
  if (roots.empty()) throw Error(ErrorCode::kInvalidRoot, "need at least one root");

  std::optional<Num> best;
  std::uint32_t best_subset = 0;
  std::vector<int> root_count(g.n());
  std::vector<char> spanned(g.n());
  for (std::uint32_t subset = 0; subset < (1u << g.m()); ++subset) {
    DisjointSets sets(g.n());
    bool acyclic = true;
    std::fill(spanned.begin(), spanned.end(), 0);
    Num value;
    for (EdgeId e = 0; e < g.m() && acyclic; ++e) {
      if (!(subset >> e & 1u)) continue;
      const Edge& edge = g.edge(e);
      acyclic = sets.unite(edge.u, edge.v);
      spanned[edge.u] = spanned[edge.v] = 1;
      value += edge.w;
    }
    if (!acyclic) continue;
    std::fill(root_count.begin(), root_count.end(), 0);
    for (VertexId r : roots) ++root_count[sets.find(r)];
    bool feasible = true;
    for (VertexId v = 0; v < g.n() && feasible; ++v) {
      if (is_root[v]) spanned[v] = 1;
      if (spanned[v] && root_count[sets.find(v)] != 1) feasible = false;
      if (!spanned[v]) value += g.penalty(v);
    }
    if (!feasible) continue;
    if (!best || value < *best) {
      best = std::move(value);
      best_subset = subset;
    }
  }

  std::vector<EdgeId> edges;
  std::vector<char> in(g.n(), 0);
  for (VertexId r : roots) in[r] = 1;
  for (EdgeId e = 0; e < g.m(); ++e)
    if (best_subset >> e & 1u) {
      edges.push_back(e);
      in[g.edge(e).u] = in[g.edge(e).v] = 1;
    }
  std::vector<VertexId> vertices;
  for (VertexId v = 0; v < g.n(); ++v)
    if (in[v]) vertices.push_back(v);
  Forest witness = Forest::make(g, std::move(vertices), std::move(edges));
  Num value = cost_plus_penalty(g, witness);
  if (value != *best) throw Error(ErrorCode::kInconsistent, "oracle witness does not re-evaluate");
  const int k = witness.k();
  return {std::move(value), std::move(witness), k};
}

/// max over k-component subforests F of a tree of 2 pi(V(F)) - w(F).
inline OracleResult opt_nw_kforest(const Instance& tree, int k) {
  detail::guard(tree.n() <= kNwForestGuard, "opt_nw_kforest handles at most " + std::to_string(kNwForestGuard) + " vertices");
  if (tree.n() > 0) rooted_tree_from(tree, 0);  // validates the tree shape
  if (k < 0 || k > tree.n()) throw Error(ErrorCode::kKOutOfRange, "k must lie in [0, |V(T)|]");

  const std::vector<EdgeId> order = detail::kruskal_order(tree);
  Num best;  // the empty forest, feasible only at k = 0
  bool found = k == 0;
  std::uint32_t best_mask = 0;
  std::vector<EdgeId> best_edges;
  for (std::uint32_t mask = 1; mask < (1u << tree.n()); ++mask) {
    auto edges = detail::cheapest_forest(tree, order, mask, k);
    if (!edges) continue;
    Num value;
    for (VertexId v = 0; v < tree.n(); ++v)
      if (mask >> v & 1u) value += tree.penalty(v);
    value *= Num(2);
    for (EdgeId e : *edges) value -= tree.edge(e).w;
    if (!found || best < value) {
      found = true;
      best = std::move(value);
      best_mask = mask;
      best_edges = std::move(*edges);
    }
  }
  if (!found) throw Error(ErrorCode::kKOutOfRange, "no forest with " + std::to_string(k) + " components");

  std::vector<VertexId> all(tree.n());
  std::iota(all.begin(), all.end(), 0);
  std::vector<EdgeId> every(tree.m());
  std::iota(every.begin(), every.end(), 0);
  const Forest scope = Forest::make(tree, std::move(all), std::move(every));
  Forest witness = Forest::make(tree, detail::mask_vertices(tree.n(), best_mask), std::move(best_edges));
  Num value = net_worth(tree, scope, witness);
  if (value != best || witness.k() != k) throw Error(ErrorCode::kInconsistent, "oracle witness does not re-evaluate");
  return {std::move(value), std::move(witness), k};
}

/// min over (K >= 1, U) of c K + pi(V \ U), where U must be spanned by a
/// K-component forest of weight at most K a t. No sweep plan with at least
/// one sensor costs less.
inline OracleResult sweep_lower_bound(const SweepInstance& si) {
  const Instance& g = si.graph();
  detail::guard(g.n() <= kSweepBoundGuard, "sweep_lower_bound handles at most " + std::to_string(kSweepBoundGuard) + " vertices");
  if (g.n() < 1) throw Error(ErrorCode::kDomain, "sweep cover needs at least one vertex");
  const std::vector<EdgeId> order = detail::kruskal_order(g);

  std::optional<Num> best;
  std::uint32_t best_mask = 0;
  int best_k = 0;
  for (std::uint32_t mask = 1; mask < (1u << g.n()); ++mask) {
    const std::vector<EdgeId> msf = detail::induced_msf(g, order, mask);
    const int size = std::popcount(mask);
    const int c = size - static_cast<int>(msf.size());
    Num missed;
    for (VertexId v = 0; v < g.n(); ++v)
      if (!(mask >> v & 1u)) missed += g.penalty(v);
    // Dropping the heaviest edges one by one gives the cheapest forest for each K.
    Num weight;
    for (EdgeId e : msf) weight += g.edge(e).w;
    for (int k = c; k <= size; ++k) {
      if (k >= 1 && weight <= Num(k) * si.reach()) {
        Num value = si.cost() * Num(k) + missed;
        if (!best || value < *best) {
          best = std::move(value);
          best_mask = mask;
          best_k = k;
        }
        break;  // larger K on the same U only costs more
      }
      if (k - c < static_cast<int>(msf.size())) weight -= g.edge(msf[msf.size() - 1 - (k - c)]).w;
    }
  }

  auto edges = detail::cheapest_forest(g, order, best_mask, best_k);
  Forest witness = Forest::make(g, detail::mask_vertices(g.n(), best_mask), std::move(*edges));
  if (!(forest_weight(g, witness) <= Num(best_k) * si.reach()))
    throw Error(ErrorCode::kInconsistent, "oracle witness exceeds its weight budget");
  Num value = si.cost() * Num(witness.k()) + unspanned_penalty(g, witness);
  if (value != *best) throw Error(ErrorCode::kInconsistent, "oracle witness does not re-evaluate");
  return {std::move(value), std::move(witness), best_k};
}

}  // namespace pcf

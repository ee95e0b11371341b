#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pcf/error.hpp"
#include "pcf/num.hpp"
#include "pcf/union_find.hpp"

namespace pcf {

using VertexId = int;
using EdgeId = int;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  Num w;

  VertexId other(VertexId x) const { return x == u ? v : u; }
  VertexId lo() const { return std::min(u, v); }
  VertexId hi() const { return std::max(u, v); }
};

struct Incidence {
  VertexId neighbor;
  EdgeId edge;
};

/// Undirected graph with nonnegative edge weights and vertex penalties.
///
/// Vertices are dense ids 0..n-1; the label each vertex carried in its input
/// document is kept for output. Self-loops and parallel edges are rejected.
class Instance {
 public:
  Instance() = default;

  /// Validating constructor. `labels` may be empty, in which case label(v) == v.
  Instance(std::vector<Num> penalties, std::vector<Edge> edges, std::vector<std::int64_t> labels = {})
      : penalty_(std::move(penalties)), edges_(std::move(edges)), label_(std::move(labels)) {
    const int n = static_cast<int>(penalty_.size());
    if (label_.empty()) {
      label_.resize(n);
      std::iota(label_.begin(), label_.end(), 0);
    }
    if (static_cast<int>(label_.size()) != n)
      throw Error(ErrorCode::kSchema, "label count does not match vertex count");
    for (int v = 0; v < n; ++v)
      if (penalty_[v].is_negative())
        throw Error(ErrorCode::kNegativePenalty, "vertex " + std::to_string(label_[v]) + " has penalty " + penalty_[v].str());

    adjacency_.assign(n, {});
    index_.reserve(edges_.size() * 2);
    for (EdgeId e = 0; e < static_cast<EdgeId>(edges_.size()); ++e) {
      const Edge& edge = edges_[e];
      if (edge.u < 0 || edge.u >= n || edge.v < 0 || edge.v >= n)
        throw Error(ErrorCode::kDanglingVertex, "edge " + std::to_string(e) + " references an unknown vertex");
      if (edge.u == edge.v) throw Error(ErrorCode::kSelfLoop, "self-loop at vertex " + std::to_string(label_[edge.u]));
      if (edge.w.is_negative())
        throw Error(ErrorCode::kNegativeWeight, "edge {" + std::to_string(label_[edge.u]) + "," +
                                                    std::to_string(label_[edge.v]) + "} has weight " + edge.w.str());
      if (!index_.emplace(key(edge.u, edge.v), e).second)
        throw Error(ErrorCode::kDuplicateEdge, "parallel edge {" + std::to_string(label_[edge.u]) + "," +
                                                   std::to_string(label_[edge.v]) + "}");
      adjacency_[edge.u].push_back({edge.v, e});
      adjacency_[edge.v].push_back({edge.u, e});
    }
  }

  int n() const { return static_cast<int>(penalty_.size()); }
  int m() const { return static_cast<int>(edges_.size()); }

  const Num& penalty(VertexId v) const { return penalty_[v]; }
  std::span<const Num> penalties() const { return penalty_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Incidence> incident(VertexId v) const { return adjacency_[v]; }
  std::int64_t label(VertexId v) const { return label_[v]; }
  std::span<const std::int64_t> labels() const { return label_; }

  std::optional<EdgeId> find_edge(VertexId a, VertexId b) const {
    auto it = index_.find(key(a, b));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Num total_penalty() const {
    Num sum;
    for (const Num& p : penalty_) sum += p;
    return sum;
  }

  friend bool operator==(const Instance& a, const Instance& b) {
    if (a.penalty_ != b.penalty_ || a.label_ != b.label_ || a.edges_.size() != b.edges_.size()) return false;
    for (std::size_t i = 0; i < a.edges_.size(); ++i) {
      const Edge& x = a.edges_[i];
      const Edge& y = b.edges_[i];
      if (x.u != y.u || x.v != y.v || x.w != y.w) return false;
    }
    return true;
  }

 private:
  static std::uint64_t key(VertexId a, VertexId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
  }

  std::vector<Num> penalty_;
  std::vector<Edge> edges_;
  std::vector<std::int64_t> label_;
  std::vector<std::vector<Incidence>> adjacency_;
  std::unordered_map<std::uint64_t, EdgeId> index_;
};

/// A subforest of an instance: spanned vertex set plus an acyclic edge set.
/// Components may be singletons; k = |spanned| - |edges|.
class Forest {
 public:
  Forest() = default;

  /// Validates membership, endpoint coverage and acyclicity.
  static Forest make(const Instance& g, std::vector<VertexId> spanned, std::vector<EdgeId> edges) {
    std::sort(spanned.begin(), spanned.end());
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(spanned.begin(), spanned.end()) != spanned.end())
      throw Error(ErrorCode::kInvalidForest, "vertex listed twice");
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
      throw Error(ErrorCode::kInvalidForest, "edge listed twice");
    std::vector<char> in(g.n(), 0);
    for (VertexId v : spanned) {
      if (v < 0 || v >= g.n()) throw Error(ErrorCode::kInvalidForest, "unknown vertex " + std::to_string(v));
      in[v] = 1;
    }
    DisjointSets sets(g.n());
    for (EdgeId e : edges) {
      if (e < 0 || e >= g.m()) throw Error(ErrorCode::kInvalidForest, "unknown edge " + std::to_string(e));
      const Edge& edge = g.edge(e);
      if (!in[edge.u] || !in[edge.v]) throw Error(ErrorCode::kInvalidForest, "edge endpoint not spanned");
      if (!sets.unite(edge.u, edge.v)) throw Error(ErrorCode::kInvalidForest, "edge set contains a cycle");
    }
    Forest f;
    f.k_ = static_cast<int>(spanned.size()) - static_cast<int>(edges.size());
    f.spanned_ = std::move(spanned);
    f.edges_ = std::move(edges);
    return f;
  }

  std::span<const VertexId> spanned() const { return spanned_; }
  std::span<const EdgeId> edges() const { return edges_; }
  int k() const { return k_; }

  bool spans(VertexId v) const { return std::binary_search(spanned_.begin(), spanned_.end(), v); }
  bool contains_edge(EdgeId e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

  /// Vertex sets of the components, each sorted, ordered by smallest vertex.
  std::vector<std::vector<VertexId>> components(const Instance& g) const {
    DisjointSets sets(g.n());
    for (EdgeId e : edges_) sets.unite(g.edge(e).u, g.edge(e).v);
    std::unordered_map<int, std::size_t> slot;
    std::vector<std::vector<VertexId>> out;
    for (VertexId v : spanned_) {
      auto [it, fresh] = slot.emplace(sets.find(v), out.size());
      if (fresh) out.emplace_back();
      out[it->second].push_back(v);
    }
    return out;
  }

  friend bool operator==(const Forest&, const Forest&) = default;

 private:
  std::vector<VertexId> spanned_;
  std::vector<EdgeId> edges_;
  int k_ = 0;
};

inline Num forest_weight(const Instance& g, const Forest& f) {
  Num w;
  for (EdgeId e : f.edges()) w += g.edge(e).w;
  return w;
}

inline Num unspanned_penalty(const Instance& g, const Forest& f) {
  Num p;
  for (VertexId v = 0; v < g.n(); ++v)
    if (!f.spans(v)) p += g.penalty(v);
  return p;
}

inline void check_forest_of(const Instance& g, const Forest& f) {
  for (VertexId v : f.spanned())
    if (v < 0 || v >= g.n()) throw Error(ErrorCode::kInvalidForest, "forest references unknown vertex");
  for (EdgeId e : f.edges())
    if (e < 0 || e >= g.m()) throw Error(ErrorCode::kInvalidForest, "forest references unknown edge");
}

/// w(F) + pi(V \ V(F)).
inline Num cost_plus_penalty(const Instance& g, const Forest& f) {
  check_forest_of(g, f);
  return forest_weight(g, f) + unspanned_penalty(g, f);
}

/// w(F) + r * pi(V \ V(F)), the left side of an r-LMP guarantee.
inline Num lmp_value(const Instance& g, const Forest& f, const Num& r) {
  if (r < Num(1)) throw Error(ErrorCode::kDomain, "LMP factor must be at least 1");
  check_forest_of(g, f);
  return forest_weight(g, f) + r * unspanned_penalty(g, f);
}

}  // namespace pcf

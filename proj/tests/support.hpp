#pragma once

#include <algorithm>
#include <vector>

#include "pcf/pcf.hpp"

namespace pcf::test {

inline Num N(const char* text) { return Num::parse(text); }

/// Five-vertex path with penalties (100, 1, 1, 100, 100), weights (1, 11, 10, 1).
inline Instance path5() {
  return Instance({Num(100), Num(1), Num(1), Num(100), Num(100)},
                  {{0, 1, Num(1)}, {1, 2, Num(11)}, {2, 3, Num(10)}, {3, 4, Num(1)}});
}

/// Star with center penalty 2 and leaves 6.2, 6.5, 7.5, 5.5.
inline Instance star5() {
  return Instance({Num(2), N("6.2"), N("6.5"), N("7.5"), N("5.5")},
                  {{0, 1, Num(9)}, {0, 2, Num(9)}, {0, 3, Num(9)}, {0, 4, Num(11)}});
}

/// Six vertices A..F (ids 0..5) whose growth runs e1, e2, S3, e4, S5, e6, S7, e8.
inline Instance six_vertex_growth() {
  return Instance({N("4.5"), N("3.5"), Num(10), Num(10), N("1.75"), N("1.75")},
                  {{2, 3, Num(2)},      // e1 = CD
                   {4, 5, Num(3)},      // e2 = EF
                   {3, 5, Num(5)},      // e4 = DF
                   {0, 1, N("7.5")},    // e6 = AB
                   {1, 2, Num(9)}});    // e8 = BC
}

/// Sub-instance induced by `vertices` and `edges`; `back` maps new ids to old.
struct Induced {
  Instance graph;
  std::vector<VertexId> back;
};

inline Induced induced(const Instance& g, const std::vector<VertexId>& vertices, const std::vector<EdgeId>& edges) {
  std::vector<int> to(g.n(), -1);
  std::vector<Num> penalties;
  for (VertexId v : vertices) {
    to[v] = static_cast<int>(penalties.size());
    penalties.push_back(g.penalty(v));
  }
  std::vector<Edge> list;
  for (EdgeId e : edges) list.push_back({to[g.edge(e).u], to[g.edge(e).v], g.edge(e).w});
  return {Instance(std::move(penalties), std::move(list)), vertices};
}

/// The step-by-step method that either adds the best subtree of what is left
/// or splits one tree in two, whichever gains more. It is not optimal.
inline Num greedy_nw_forest(const Instance& tree, int k) {
  struct Tree {
    std::vector<VertexId> vertices;
    std::vector<EdgeId> edges;
    Num nw;
  };
  auto tree_edges = [&](const std::vector<VertexId>& vs) {
    std::vector<char> in(tree.n(), 0);
    for (VertexId v : vs) in[v] = 1;
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < tree.m(); ++e)
      if (in[tree.edge(e).u] && in[tree.edge(e).v]) out.push_back(e);
    return out;
  };
  auto lift = [&](const Induced& sub, const Forest& f) {
    std::vector<Tree> out;
    for (const auto& comp : f.components(sub.graph)) {
      Tree t;
      for (VertexId v : comp) {
        t.vertices.push_back(sub.back[v]);
        t.nw += Num(2) * sub.graph.penalty(v);
      }
      t.edges = tree_edges(t.vertices);
      for (EdgeId e : t.edges) t.nw -= tree.edge(e).w;
      out.push_back(std::move(t));
    }
    return out;
  };

  std::vector<Tree> forest;
  for (int step = 0; step < k; ++step) {
    std::optional<Num> best_gain;
    std::vector<Tree> best;
    // (a) add a best subtree of what is left.
    std::vector<char> used(tree.n(), 0);
    for (const Tree& t : forest)
      for (VertexId v : t.vertices) used[v] = 1;
    std::vector<VertexId> rest;
    for (VertexId v = 0; v < tree.n(); ++v)
      if (!used[v]) rest.push_back(v);
    if (!rest.empty()) {
      const Induced left = induced(tree, rest, tree_edges(rest));
      const Forest scope = Forest::make(left.graph, [&] {
        std::vector<VertexId> all(left.graph.n());
        std::iota(all.begin(), all.end(), 0);
        return all;
      }(), [&] {
        std::vector<EdgeId> all(left.graph.m());
        std::iota(all.begin(), all.end(), 0);
        return all;
      }());
      for (const auto& comp : scope.components(left.graph)) {
        std::vector<VertexId> vs;
        for (VertexId v : comp) vs.push_back(left.back[v]);
        const Induced piece = induced(tree, vs, tree_edges(vs));
        const OracleResult r = opt_nw_kforest(piece.graph, 1);
        if (!best_gain || *best_gain < r.value) {
          best_gain = r.value;
          best = forest;
          for (Tree& t : lift(piece, r.witness)) best.push_back(std::move(t));
        }
      }
    }
    // (b) split one tree in two.
    for (std::size_t i = 0; i < forest.size(); ++i) {
      if (forest[i].vertices.size() < 2) continue;
      const Induced piece = induced(tree, forest[i].vertices, forest[i].edges);
      const OracleResult r = opt_nw_kforest(piece.graph, 2);
      const Num gain = r.value - forest[i].nw;
      if (!best_gain || *best_gain < gain) {
        best_gain = gain;
        best = forest;
        best.erase(best.begin() + static_cast<std::ptrdiff_t>(i));
        for (Tree& t : lift(piece, r.witness)) best.push_back(std::move(t));
      }
    }
    if (!best_gain) break;
    forest = std::move(best);
  }
  Num total;
  for (const Tree& t : forest) total += t.nw;
  return total;
}

/// Shape of the seeded random instances used across the property suites.
struct RandomShape {
  int n;
  int m;
};

inline RandomShape random_shape(std::uint64_t seed, int n_max, int m_max) {
  SplitMix64 rng(seed ^ 0x5eedULL);
  const int n = static_cast<int>(rng.uniform(1, n_max));
  const int m = static_cast<int>(rng.uniform(0, std::min<std::int64_t>(m_max, std::int64_t{n} * (n - 1) / 2)));
  return {n, m};
}

inline Instance random_instance(std::uint64_t seed, int n_max = 10, int m_max = 20) {
  const RandomShape s = random_shape(seed, n_max, m_max);
  return generate_random(seed, s.n, s.m, 20, 20);
}

/// Roots one per component of an optimal K-forest.
inline std::vector<VertexId> roots_from(const Instance& g, const Forest& f) {
  std::vector<VertexId> roots;
  for (const auto& comp : f.components(g)) roots.push_back(comp.front());
  return roots;
}

}  // namespace pcf::test

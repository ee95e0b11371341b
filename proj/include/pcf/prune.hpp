#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <vector>

#include "pcf/instance.hpp"
#include "pcf/moat.hpp"

namespace pcf {

/// A tree hung from a designated root. Node ids are 0..size()-1; children
/// are kept in ascending id order so every prefix DP is deterministic.
struct RootedTree {
  int root = 0;
  std::vector<Num> penalty;
  std::vector<int> parent;
  std::vector<Num> parent_weight;
  std::vector<std::vector<int>> children;
  std::vector<VertexId> vertex;     // instance vertex of each node, -1 for a dummy
  std::vector<EdgeId> parent_edge;  // instance edge to the parent, -1 if none
  std::vector<int> subtree_size;
  std::vector<int> preorder;

  int size() const { return static_cast<int>(penalty.size()); }
};

struct TreeArc {
  int a;
  int b;
  Num w;
  EdgeId edge;
};

/// Orients a tree given as an arc list. Throws NotATree if the arcs do not
/// form a spanning tree on `penalty.size()` nodes.
inline RootedTree orient_tree(std::vector<Num> penalty, const std::vector<TreeArc>& arcs, int root,
                              std::vector<VertexId> vertex) {
  const int n = static_cast<int>(penalty.size());
  if (n == 0 || root < 0 || root >= n) throw Error(ErrorCode::kNotATree, "tree needs a root among its vertices");
  if (static_cast<int>(arcs.size()) != n - 1) throw Error(ErrorCode::kNotATree, "a tree on n vertices has n-1 edges");

  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < static_cast<int>(arcs.size()); ++i) {
    adj[arcs[i].a].push_back(i);
    adj[arcs[i].b].push_back(i);
  }
  RootedTree t;
  t.root = root;
  t.penalty = std::move(penalty);
  t.vertex = std::move(vertex);
  t.parent.assign(n, -1);
  t.parent_weight.assign(n, Num(0));
  t.parent_edge.assign(n, -1);
  t.children.assign(n, {});
  t.subtree_size.assign(n, 1);
  t.preorder.reserve(n);

  std::vector<char> seen(n, 0);
  std::vector<int> stack{root};
  seen[root] = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    t.preorder.push_back(u);
    for (int i : adj[u]) {
      const TreeArc& arc = arcs[i];
      const int v = arc.a == u ? arc.b : arc.a;
      if (seen[v]) continue;
      seen[v] = 1;
      t.parent[v] = u;
      t.parent_weight[v] = arc.w;
      t.parent_edge[v] = arc.edge;
      t.children[u].push_back(v);
      stack.push_back(v);
    }
  }
  if (static_cast<int>(t.preorder.size()) != n) throw Error(ErrorCode::kNotATree, "tree is disconnected");
  for (auto& ch : t.children) std::sort(ch.begin(), ch.end());
  for (auto it = t.preorder.rbegin(); it != t.preorder.rend(); ++it)
    if (t.parent[*it] >= 0) t.subtree_size[t.parent[*it]] += t.subtree_size[*it];
  return t;
}

/// Roots a tree-shaped instance at `root`; node ids coincide with vertex ids.
inline RootedTree rooted_tree_from(const Instance& tree, VertexId root) {
  std::vector<TreeArc> arcs;
  arcs.reserve(tree.m());
  for (EdgeId e = 0; e < tree.m(); ++e) arcs.push_back({tree.edge(e).u, tree.edge(e).v, tree.edge(e).w, e});
  std::vector<VertexId> vertex(tree.n());
  std::iota(vertex.begin(), vertex.end(), 0);
  return orient_tree(std::vector<Num>(tree.penalties().begin(), tree.penalties().end()), arcs, root, std::move(vertex));
}

/// Stitches the grown components into one tree: a dummy root (node n, zero
/// penalty) joined by zero-weight edges to the smallest vertex of each final
/// component. Removing the dummy gives back exactly the grown components.
inline RootedTree build_aux_tree(const Instance& g, const Growth& gr) {
  if (g.n() == 0 || gr.final_components.empty()) throw Error(ErrorCode::kDomain, "auxiliary tree needs a nonempty growth");
  const int n = g.n();
  std::vector<TreeArc> arcs;
  arcs.reserve(gr.forest_edges.size() + gr.final_components.size());
  for (EdgeId e : gr.forest_edges) arcs.push_back({g.edge(e).u, g.edge(e).v, g.edge(e).w, e});
  for (ComponentId c : gr.final_components) arcs.push_back({n, gr.component(c).min_vertex, Num(0), -1});
  std::vector<Num> penalty(g.penalties().begin(), g.penalties().end());
  penalty.emplace_back(0);
  std::vector<VertexId> vertex(n + 1);
  std::iota(vertex.begin(), vertex.end(), 0);
  vertex[n] = -1;
  return orient_tree(std::move(penalty), arcs, n, std::move(vertex));
}

/// Node states of the forest DP: (in forest?, component root?).
enum class NodeState : std::uint8_t {
  kOut = 0,     // p=0, t=0
  kLinked = 1,  // p=1, t=0: joined to its parent's component
  kRoot = 2,    // p=1, t=1: tops its own component
};

/// A subforest picked out of a RootedTree.
struct Selection {
  std::vector<int> nodes;   // nodes in the forest
  std::vector<int> linked;  // nodes whose parent edge is in the forest
  Num net_worth;
};

/// The double dynamic program for NW-maximum k-forests.
///
/// f(u, s, k) is the best net worth 2 pi(V(F)) - w(F) of a subforest F of the
/// subtree at u with node state s and exactly k component roots. Children are
/// folded in one at a time: an outer table over (child prefix, roots so far)
/// for p_u = 0, and one over (child prefix, linked-or-not, roots so far) for
/// p_u = 1. Root counts are capped at min(k_max, subtree size).
class PruneTable {
 public:
  PruneTable(const RootedTree& tree, int k_max) : tree_(tree), k_max_(k_max) {
    if (k_max < 0 || k_max > tree.size()) throw Error(ErrorCode::kKOutOfRange, "k must lie in [0, |V(T)|]");
    const int n = tree.size();
    f_.resize(n);
    case1_.resize(n);
    case2_.resize(n);
    for (auto it = tree.preorder.rbegin(); it != tree.preorder.rend(); ++it) solve_node(*it);
  }

  int k_max() const { return k_max_; }
  const RootedTree& tree() const { return tree_; }

  int cap(int u) const { return std::min(k_max_, tree_.subtree_size[u]); }

  /// f(u, p, t, k); nullopt when no such subforest exists.
  MaybeNum value(int u, int p, int t, int k) const {
    if (p == 0 && t == 1) return std::nullopt;
    const auto s = static_cast<std::size_t>(p == 0 ? NodeState::kOut : t == 0 ? NodeState::kLinked : NodeState::kRoot);
    if (k < 0 || k >= static_cast<int>(f_[u][s].size())) return std::nullopt;
    return f_[u][s][k];
  }

  /// Best k-forest of the whole tree; the root is either out or tops a component.
  Selection best(int k) const {
    const MaybeNum out = value(tree_.root, 0, 0, k);
    const MaybeNum top = value(tree_.root, 1, 1, k);
    if (!out && !top) throw Error(ErrorCode::kKOutOfRange, "no forest with " + std::to_string(k) + " components");
    const NodeState s = (!top || (out && !(*out < *top))) ? NodeState::kOut : NodeState::kRoot;
    return extract(tree_.root, s, k);
  }

  /// Best k-forest that leaves the root out (the extraction used with a dummy root).
  Selection without_root(int k) const {
    if (!value(tree_.root, 0, 0, k)) throw Error(ErrorCode::kKOutOfRange, "no forest with " + std::to_string(k) + " components");
    return extract(tree_.root, NodeState::kOut, k);
  }

  Selection extract(int u, NodeState s, int k) const {
    const auto top = value(u, s == NodeState::kOut ? 0 : 1, s == NodeState::kRoot ? 1 : 0, k);
    if (!top) throw Error(ErrorCode::kInconsistent, "extracting an infeasible DP cell");
    Selection out;
    out.net_worth = *top;
    struct Frame {
      int u;
      NodeState s;
      int k;
    };
    std::vector<Frame> stack{{u, s, k}};
    while (!stack.empty()) {
      const Frame fr = stack.back();
      stack.pop_back();
      const auto& ch = tree_.children[fr.u];
      if (fr.s == NodeState::kOut) {
        int rest = fr.k;
        for (int i = static_cast<int>(ch.size()) - 1; i >= 0; --i) {
          const Choice1& c = case1_[fr.u][i][rest];
          stack.push_back({ch[i], c.state, c.kv});
          rest -= c.kv;
        }
      } else {
        out.nodes.push_back(fr.u);
        int rest = fr.k - (fr.s == NodeState::kRoot ? 1 : 0);
        for (int i = static_cast<int>(ch.size()) - 1; i >= 0; --i) {
          const Choice2& c = case2_[fr.u][i][rest];
          const int kv = c.kv[c.best_q];
          if (c.best_q == 1) {
            out.linked.push_back(ch[i]);
            stack.push_back({ch[i], NodeState::kLinked, kv});
          } else {
            stack.push_back({ch[i], c.unlinked_state, kv});
          }
          rest -= kv;
        }
      }
    }
    std::sort(out.nodes.begin(), out.nodes.end());
    std::sort(out.linked.begin(), out.linked.end());
    return out;
  }

 private:
  struct Choice1 {
    int kv = 0;
    NodeState state = NodeState::kOut;
  };
  struct Choice2 {
    int kv[2] = {0, 0};
    NodeState unlinked_state = NodeState::kOut;
    std::uint8_t best_q = 0;
  };

  const MaybeNum& cell(int v, NodeState s, int k) const {
    static const MaybeNum none;
    const auto& row = f_[v][static_cast<std::size_t>(s)];
    return k < static_cast<int>(row.size()) ? row[k] : none;
  }

  void solve_node(int u) {
    const auto& ch = tree_.children[u];
    const int d = static_cast<int>(ch.size());
    case1_[u].resize(d);
    case2_[u].resize(d);

    // p_u = 0: each child is either out or tops its own component.
    std::vector<MaybeNum> prev{Num(0)};
    int prev_cap = 0;
    for (int i = 0; i < d; ++i) {
      const int v = ch[i];
      const int vcap = cap(v);
      const int next_cap = std::min(k_max_, prev_cap + tree_.subtree_size[v]);
      std::vector<MaybeNum> cur(next_cap + 1);
      std::vector<Choice1>& choice = case1_[u][i];
      choice.assign(next_cap + 1, {});
      for (int kk = 0; kk <= next_cap; ++kk)
        for (int kv = std::max(0, kk - prev_cap); kv <= std::min(kk, vcap); ++kv) {
          const MaybeNum& base = prev[kk - kv];
          if (!base) continue;
          for (NodeState s : {NodeState::kOut, NodeState::kRoot}) {
            const MaybeNum& fv = cell(v, s, kv);
            if (!fv) continue;
            Num cand = *base + *fv;
            if (!cur[kk] || *cur[kk] < cand) {
              cur[kk] = std::move(cand);
              choice[kk] = {kv, s};
            }
          }
        }
      prev = std::move(cur);
      prev_cap = next_cap;
    }
    auto& fu = f_[u];
    const int ucap = cap(u);
    fu[0].assign(ucap + 1, std::nullopt);
    for (int kk = 0; kk <= std::min(prev_cap, ucap); ++kk) fu[0][kk] = prev[kk];

    // p_u = 1: each child is linked (pays its edge), out, or tops its own component.
    prev.assign(1, Num(0));
    prev_cap = 0;
    for (int i = 0; i < d; ++i) {
      const int v = ch[i];
      const int vcap = cap(v);
      const int next_cap = std::min(k_max_, prev_cap + tree_.subtree_size[v]);
      std::vector<MaybeNum> cur(next_cap + 1);
      std::vector<Choice2>& choice = case2_[u][i];
      choice.assign(next_cap + 1, {});
      for (int kk = 0; kk <= next_cap; ++kk) {
        MaybeNum best_q[2];
        NodeState unlinked = NodeState::kOut;
        for (int kv = std::max(0, kk - prev_cap); kv <= std::min(kk, vcap); ++kv) {
          const MaybeNum& base = prev[kk - kv];
          if (!base) continue;
          // q = 0
          for (NodeState s : {NodeState::kOut, NodeState::kRoot}) {
            const MaybeNum& fv = cell(v, s, kv);
            if (!fv) continue;
            Num cand = *base + *fv;
            if (!best_q[0] || *best_q[0] < cand) {
              best_q[0] = std::move(cand);
              choice[kk].kv[0] = kv;
              unlinked = s;
            }
          }
          // q = 1
          if (const MaybeNum& fv = cell(v, NodeState::kLinked, kv)) {
            Num cand = *base + *fv - tree_.parent_weight[v];
            if (!best_q[1] || *best_q[1] < cand) {
              best_q[1] = std::move(cand);
              choice[kk].kv[1] = kv;
            }
          }
        }
        choice[kk].unlinked_state = unlinked;
        // Equal values: smaller child allocation first, then unlinked.
        std::uint8_t q = 0;
        if (!best_q[0]) q = 1;
        else if (best_q[1] && (*best_q[0] < *best_q[1] ||
                               (*best_q[0] == *best_q[1] && choice[kk].kv[1] < choice[kk].kv[0])))
          q = 1;
        choice[kk].best_q = q;
        cur[kk] = best_q[q];
      }
      prev = std::move(cur);
      prev_cap = next_cap;
    }
    const Num own = Num(2) * tree_.penalty[u];
    fu[1].assign(ucap + 1, std::nullopt);
    fu[2].assign(ucap + 1, std::nullopt);
    for (int kk = 0; kk <= prev_cap; ++kk) {
      if (!prev[kk]) continue;
      if (kk <= ucap) fu[1][kk] = *prev[kk] + own;
      if (kk + 1 <= ucap) fu[2][kk + 1] = *prev[kk] + own;
    }
  }

  const RootedTree& tree_;
  int k_max_;
  std::vector<std::array<std::vector<MaybeNum>, 3>> f_;
  std::vector<std::vector<std::vector<Choice1>>> case1_;
  std::vector<std::vector<std::vector<Choice2>>> case2_;
};

/// nw(sub) = 2 pi(V(sub)) - w(sub), taken with respect to `scope`.
inline Num net_worth(const Instance& g, const Forest& scope, const Forest& sub) {
  for (VertexId v : sub.spanned())
    if (!scope.spans(v)) throw Error(ErrorCode::kInvalidForest, "subforest vertex outside scope");
  for (EdgeId e : sub.edges())
    if (!scope.contains_edge(e)) throw Error(ErrorCode::kInvalidForest, "subforest edge outside scope");
  Num nw;
  for (VertexId v : sub.spanned()) nw += g.penalty(v);
  nw *= Num(2);
  return nw - forest_weight(g, sub);
}

/// pc(sub) = w(sub) + 2 pi(V(scope) \ V(sub)); pc + nw is constant over subforests.
inline Num prize_collecting_value(const Instance& g, const Forest& scope, const Forest& sub) {
  Num missed;
  for (VertexId v : scope.spanned())
    if (!sub.spans(v)) missed += g.penalty(v);
  return forest_weight(g, sub) + Num(2) * missed;
}

/// Maps a DP selection back to a Forest of the instance the tree came from.
inline Forest selection_to_forest(const Instance& g, const RootedTree& tree, const Selection& sel) {
  std::vector<VertexId> spanned;
  for (int node : sel.nodes) {
    if (tree.vertex[node] < 0) throw Error(ErrorCode::kInconsistent, "dummy node selected");
    spanned.push_back(tree.vertex[node]);
  }
  std::vector<EdgeId> edges;
  for (int node : sel.linked) {
    if (tree.parent_edge[node] < 0) throw Error(ErrorCode::kInconsistent, "dummy edge selected");
    edges.push_back(tree.parent_edge[node]);
  }
  return Forest::make(g, std::move(spanned), std::move(edges));
}

struct PruneResult {
  Forest forest;
  Num net_worth;
};

/// NW-maximum k-forest of a tree-shaped instance (k = 0 gives the empty forest).
inline PruneResult rootless_prune(const Instance& tree, VertexId root, int k) {
  const RootedTree rt = rooted_tree_from(tree, root);
  if (k < 0 || k > rt.size()) throw Error(ErrorCode::kKOutOfRange, "k must lie in [0, |V(T)|]");
  const PruneTable table(rt, k);
  const Selection sel = table.best(k);
  return {selection_to_forest(tree, rt, sel), sel.net_worth};
}

/// Unrooted solver: rootless growth, auxiliary tree, and one DP read at
/// f(dummy, out, K). The result has exactly K components.
inline Forest solve_urpcf(const Instance& g, const Growth& gr, int k) {
  if (k < 1 || k > g.n()) throw Error(ErrorCode::kKOutOfRange, "K = " + std::to_string(k) + " is outside [1, " + std::to_string(g.n()) + "]");
  const RootedTree aux = build_aux_tree(g, gr);
  const PruneTable table(aux, k);
  return selection_to_forest(g, aux, table.without_root(k));
}

inline Forest solve_urpcf(const Instance& g, int k) {
  if (k < 1 || k > g.n()) throw Error(ErrorCode::kKOutOfRange, "K = " + std::to_string(k) + " is outside [1, " + std::to_string(g.n()) + "]");
  return solve_urpcf(g, rootless_grow(g), k);
}

}  // namespace pcf

#pragma once

#include <algorithm>
#include <queue>
#include <string>
#include <vector>

#include "pcf/instance.hpp"
#include "pcf/io.hpp"
#include "pcf/union_find.hpp"

namespace pcf {

using ComponentId = int;

/// A member of the laminar family: every component that ever existed during
/// growth. Ids 0..n-1 are the singletons {v}; each merge creates a fresh id,
/// so a merged component always has a larger id than its two parts.
struct Component {
  ComponentId id = -1;
  std::vector<VertexId> vertices;  // sorted
  VertexId min_vertex = -1;
  ComponentId left = -1;    // part holding the lower endpoint of `edge`
  ComponentId right = -1;
  ComponentId parent = -1;  // component it was merged into, -1 if final
  EdgeId edge = -1;         // edge whose addition created it
  Num penalty;              // pi(S)
  Num y;                    // dual value y_S
  Num h;                    // sum of y over family members contained in S
  Num born;                 // growth time at creation
  int created_event = -1;
  int deactivated_event = -1;
  int merged_event = -1;

  bool singleton() const { return left < 0; }
  bool deactivated() const { return deactivated_event >= 0; }
  /// Activity just before event `index` is applied.
  bool active_before(int index) const {
    return created_event < index && (deactivated_event < 0 || deactivated_event >= index);
  }
};

struct Event {
  enum class Kind { kEdgeAdded, kDeactivated };

  Kind kind = Kind::kEdgeAdded;
  int index = 0;
  Num epsilon;  // uniform increase applied to active duals in this iteration
  Num time;     // cumulative growth time after the increase

  // kEdgeAdded
  EdgeId edge = -1;
  ComponentId left = -1;
  ComponentId right = -1;
  bool left_active = false;
  bool right_active = false;
  ComponentId merged = -1;

  // kDeactivated
  ComponentId component = -1;
};

/// Result of rootless growth. Treated as immutable by every consumer.
struct Growth {
  int n = 0;
  int m = 0;
  std::vector<Component> family;
  std::vector<Event> events;
  std::vector<EdgeId> forest_edges;           // in order of addition
  std::vector<int> edge_event;                // per instance edge, -1 if never added
  std::vector<ComponentId> final_components;  // ordered by smallest vertex
  std::vector<ComponentId> final_of;          // per vertex
  std::vector<Num> d;                         // accumulated increase on each vertex

  const Component& component(ComponentId c) const { return family[c]; }

  /// The components merged by edge e at its addition (the family just before e).
  std::pair<const Component*, const Component*> sides_of(EdgeId e) const {
    const Event& ev = events[edge_event[e]];
    return {&family[ev.left], &family[ev.right]};
  }

  /// forest_b: every added edge, spanning all vertices.
  Forest forest(const Instance& g) const {
    std::vector<VertexId> all(g.n());
    std::iota(all.begin(), all.end(), 0);
    return Forest::make(g, std::move(all), forest_edges);
  }
};

namespace detail {

struct EdgeCandidate {
  Num time;
  VertexId lo;
  VertexId hi;
  EdgeId edge;
  unsigned version;
};

struct EdgeLater {
  bool operator()(const EdgeCandidate& a, const EdgeCandidate& b) const {
    if (auto c = a.time <=> b.time; c != 0) return c > 0;
    if (a.lo != b.lo) return a.lo > b.lo;
    return a.hi > b.hi;
  }
};

struct SetCandidate {
  Num time;
  VertexId min_vertex;
  ComponentId component;
};

struct SetLater {
  bool operator()(const SetCandidate& a, const SetCandidate& b) const {
    if (auto c = a.time <=> b.time; c != 0) return c > 0;
    return a.min_vertex > b.min_vertex;
  }
};

class GrowthRun {
 public:
  explicit GrowthRun(const Instance& g) : g_(g), sets_(g.n()) {
    const int n = g.n();
    out_.n = n;
    out_.m = g.m();
    out_.edge_event.assign(g.m(), -1);
    out_.family.reserve(2 * static_cast<std::size_t>(n));
    live_.resize(n);
    active_.reserve(2 * static_cast<std::size_t>(n));
    d_base_.assign(n, Num(0));
    since_.assign(n, Num(0));
    version_.assign(g.m(), 0);
    for (VertexId v = 0; v < n; ++v) {
      Component c;
      c.id = v;
      c.vertices = {v};
      c.min_vertex = v;
      c.penalty = g.penalty(v);
      out_.family.push_back(std::move(c));
      active_.push_back(1);
      live_[v] = v;
      sets_heap_.push({g.penalty(v), v, v});
    }
    active_count_ = n;
    for (EdgeId e = 0; e < g.m(); ++e) schedule(e);
  }

  Growth run() && {
    while (active_count_ > 0) {
      while (!edges_heap_.empty()) {
        const EdgeCandidate& top = edges_heap_.top();
        if (top.version == version_[top.edge] && comp(g_.edge(top.edge).u) != comp(g_.edge(top.edge).v)) break;
        edges_heap_.pop();
      }
      while (!sets_heap_.empty()) {
        const SetCandidate& top = sets_heap_.top();
        if (active_[top.component] && out_.family[top.component].parent < 0) break;
        sets_heap_.pop();
      }
      if (sets_heap_.empty()) throw Error(ErrorCode::kInconsistent, "active component without a deactivation time");
      // Deactivation only when its epsilon is strictly smaller than the edge epsilon.
      if (!edges_heap_.empty() && !(sets_heap_.top().time < edges_heap_.top().time)) {
        EdgeCandidate top = edges_heap_.top();
        edges_heap_.pop();
        add_edge(top.edge, top.time);
      } else {
        SetCandidate top = sets_heap_.top();
        sets_heap_.pop();
        deactivate(top.component, top.time);
      }
    }
    finish();
    return std::move(out_);
  }

 private:
  ComponentId comp(VertexId v) { return live_[sets_.find(v)]; }
  bool vertex_active(VertexId v) { return active_[comp(v)] != 0; }

  Num d_now(VertexId v) {
    if (vertex_active(v)) return d_base_[v] + (now_ - since_[v]);
    return d_base_[v];
  }

  void schedule(EdgeId e) {
    ++version_[e];
    const Edge& edge = g_.edge(e);
    const ComponentId cu = comp(edge.u);
    const ComponentId cv = comp(edge.v);
    if (cu == cv) return;
    const int rate = active_[cu] + active_[cv];
    if (rate == 0) return;
    Num slack = edge.w - d_now(edge.u) - d_now(edge.v);
    if (slack.is_negative()) throw Error(ErrorCode::kInconsistent, "edge constraint violated during growth");
    if (rate == 2) slack /= Num(2);
    edges_heap_.push({now_ + slack, edge.lo(), edge.hi(), e, version_[e]});
  }

  void reschedule_around(const std::vector<VertexId>& vertices) {
    for (VertexId v : vertices)
      for (const Incidence& inc : g_.incident(v)) schedule(inc.edge);
  }

  int begin_event(Event::Kind kind, const Num& time) {
    Event ev;
    ev.kind = kind;
    ev.index = static_cast<int>(out_.events.size());
    ev.epsilon = time - now_;
    ev.time = time;
    now_ = time;
    out_.events.push_back(std::move(ev));
    return out_.events.back().index;
  }

  // Freezes y and h of an active component at the current time.
  void close_active(Component& c) {
    c.y = now_ - c.born;
    c.h += c.y;
  }

  void add_edge(EdgeId e, const Num& time) {
    const int index = begin_event(Event::Kind::kEdgeAdded, time);
    const Edge& edge = g_.edge(e);
    const ComponentId left = comp(edge.lo());
    const ComponentId right = comp(edge.hi());

    Component merged;
    merged.id = static_cast<ComponentId>(out_.family.size());
    merged.left = left;
    merged.right = right;
    merged.edge = e;
    merged.born = now_;
    merged.created_event = index;

    std::vector<VertexId> woken;
    for (ComponentId side : {left, right}) {
      Component& c = out_.family[side];
      if (active_[side]) {
        close_active(c);
        --active_count_;
      } else {
        woken.insert(woken.end(), c.vertices.begin(), c.vertices.end());
      }
      c.parent = merged.id;
      c.merged_event = index;
      merged.h += c.h;  // h(S) starts as the sum over its two parts
      merged.penalty += c.penalty;
    }
    const Component& a = out_.family[left];
    const Component& b = out_.family[right];
    merged.vertices.reserve(a.vertices.size() + b.vertices.size());
    std::merge(a.vertices.begin(), a.vertices.end(), b.vertices.begin(), b.vertices.end(),
               std::back_inserter(merged.vertices));
    merged.min_vertex = merged.vertices.front();

    Event& ev = out_.events[index];
    ev.edge = e;
    ev.left = left;
    ev.right = right;
    ev.left_active = active_[left] != 0;
    ev.right_active = active_[right] != 0;
    ev.merged = merged.id;

    active_[left] = 0;
    active_[right] = 0;
    sets_.unite(edge.u, edge.v);
    live_[sets_.find(edge.u)] = merged.id;
    active_.push_back(1);
    ++active_count_;
    sets_heap_.push({now_ + merged.penalty - merged.h, merged.min_vertex, merged.id});
    // merged.h holds h at birth until close_active adds y.
    out_.family.push_back(std::move(merged));

    for (VertexId v : woken) since_[v] = now_;
    out_.edge_event[e] = index;
    out_.forest_edges.push_back(e);
    reschedule_around(woken);
  }

  void deactivate(ComponentId id, const Num& time) {
    const int index = begin_event(Event::Kind::kDeactivated, time);
    Component& c = out_.family[id];
    close_active(c);
    c.deactivated_event = index;
    out_.events[index].component = id;
    active_[id] = 0;
    --active_count_;
    for (VertexId v : c.vertices) d_base_[v] += now_ - since_[v];
    reschedule_around(c.vertices);
  }

  void finish() {
    const int n = g_.n();
    out_.final_of.assign(n, -1);
    for (const Component& c : out_.family)
      if (c.parent < 0) {
        out_.final_components.push_back(c.id);
        for (VertexId v : c.vertices) out_.final_of[v] = c.id;
      }
    std::sort(out_.final_components.begin(), out_.final_components.end(),
              [&](ComponentId a, ComponentId b) { return out_.family[a].min_vertex < out_.family[b].min_vertex; });
    out_.d = d_base_;
  }

  const Instance& g_;
  DisjointSets sets_;
  Growth out_;
  std::vector<ComponentId> live_;  // union-find representative -> component id
  std::vector<char> active_;       // per component id
  int active_count_ = 0;
  Num now_;
  std::vector<Num> d_base_;
  std::vector<Num> since_;
  std::vector<unsigned> version_;
  std::priority_queue<EdgeCandidate, std::vector<EdgeCandidate>, EdgeLater> edges_heap_;
  std::priority_queue<SetCandidate, std::vector<SetCandidate>, SetLater> sets_heap_;
};

}  // namespace detail

/// Simultaneous dual growth of all components, with no notion of roots.
///
/// Every active component raises its dual at unit rate until either an edge
/// constraint d(u) + d(v) <= w(e) or a set constraint h(S) <= pi(S) becomes
/// tight. A tight edge merges its two components into a fresh active one; a
/// tight set is deactivated. Ties go to the edge, then to the smaller
/// (lo, hi) endpoint pair or the set with the smaller minimum vertex.
inline Growth rootless_grow(const Instance& g) {
  if (g.n() == 0) throw Error(ErrorCode::kDomain, "growth needs at least one vertex");
  return detail::GrowthRun(g).run();
}

struct AuditReport {
  bool ok = true;
  std::string violation;  // first failed check
  int edges_checked = 0;
  int sets_checked = 0;
  int tight_edges = 0;
  int tight_sets = 0;

  void fail(std::string what) {
    if (ok) {
      ok = false;
      violation = std::move(what);
    }
  }
};

/// Recomputes every dual quantity from the laminar family and checks
/// (i) sum of y over sets cutting e <= w(e) for all edges, with equality on added edges;
/// (ii) h(S) <= pi(S) for all family members, with equality on deactivated ones;
/// (iii) the family is laminar and the stored d, h agree with it.
inline AuditReport check_dual_feasibility(const Instance& g, const Growth& gr) {
  if (gr.n != g.n() || gr.m != g.m() || static_cast<int>(gr.edge_event.size()) != g.m() ||
      static_cast<int>(gr.d.size()) != g.n() || static_cast<int>(gr.family.size()) < g.n())
    throw Error(ErrorCode::kInconsistent, "growth was not produced from this instance");

  AuditReport report;
  const int n = g.n();
  const int size = static_cast<int>(gr.family.size());

  // Laminarity: singletons first, each merge is the disjoint union of two earlier members.
  for (ComponentId id = 0; id < size; ++id) {
    const Component& c = gr.family[id];
    if (c.y.is_negative()) report.fail("negative dual y on component " + std::to_string(id));
    if (id < n) {
      if (c.vertices != std::vector<VertexId>{id} || !c.singleton()) report.fail("component " + std::to_string(id) + " is not the singleton {" + std::to_string(id) + "}");
      continue;
    }
    if (c.left < 0 || c.right < 0 || c.left >= id || c.right >= id || c.left == c.right) {
      report.fail("component " + std::to_string(id) + " has invalid parts");
      continue;
    }
    const Component& a = gr.family[c.left];
    const Component& b = gr.family[c.right];
    if (a.parent != id || b.parent != id) report.fail("parts of component " + std::to_string(id) + " do not point back to it");
    std::vector<VertexId> joined;
    std::merge(a.vertices.begin(), a.vertices.end(), b.vertices.begin(), b.vertices.end(), std::back_inserter(joined));
    if (std::adjacent_find(joined.begin(), joined.end()) != joined.end()) report.fail("parts of component " + std::to_string(id) + " overlap");
    if (joined != c.vertices) report.fail("component " + std::to_string(id) + " is not the union of its parts");
  }
  if (!report.ok) return report;

  // (ii) set constraints.
  std::vector<Num> h(size);
  for (ComponentId id = 0; id < size; ++id) {
    const Component& c = gr.family[id];
    h[id] = c.y;
    if (!c.singleton()) h[id] += h[c.left] + h[c.right];
    Num pi;
    for (VertexId v : c.vertices) pi += g.penalty(v);
    ++report.sets_checked;
    if (h[id] != c.h) report.fail("stored h differs from recomputed h on component " + std::to_string(id));
    if (pi < h[id]) report.fail("h(S) > pi(S) on component " + std::to_string(id) + ": " + h[id].str() + " > " + pi.str());
    if (c.deactivated()) {
      if (h[id] != pi) report.fail("deactivated component " + std::to_string(id) + " is not tight");
      else ++report.tight_sets;
    }
  }

  // (i) edge constraints via ancestor sums: above[c] = sum of y over c and its ancestors.
  std::vector<Num> above(size);
  std::vector<int> depth(size, 0);
  for (ComponentId id = size - 1; id >= 0; --id) {
    const Component& c = gr.family[id];
    above[id] = c.y;
    if (c.parent >= 0) {
      above[id] += above[c.parent];
      depth[id] = depth[c.parent] + 1;
    }
  }
  for (VertexId v = 0; v < n; ++v)
    if (above[v] != gr.d[v]) report.fail("stored d differs from recomputed d at vertex " + std::to_string(v));

  for (EdgeId e = 0; e < g.m(); ++e) {
    const Edge& edge = g.edge(e);
    ComponentId a = edge.u;
    ComponentId b = edge.v;
    while (a >= 0 && b >= 0 && a != b) {
      if (depth[a] >= depth[b]) a = gr.family[a].parent;
      else b = gr.family[b].parent;
    }
    Num cut = above[edge.u] + above[edge.v];
    if (a >= 0 && a == b) cut -= above[a] + above[a];
    ++report.edges_checked;
    if (edge.w < cut) report.fail("edge {" + std::to_string(edge.u) + "," + std::to_string(edge.v) + "} is overpacked: " + cut.str() + " > " + edge.w.str());
    if (gr.edge_event[e] >= 0) {
      if (cut != edge.w) report.fail("added edge {" + std::to_string(edge.u) + "," + std::to_string(edge.v) + "} is not tight");
      else ++report.tight_edges;
    }
  }

  for (const Event& ev : gr.events) {
    if (ev.kind != Event::Kind::kEdgeAdded) continue;
    if (ev.left == ev.right || (!ev.left_active && !ev.right_active))
      report.fail("event " + std::to_string(ev.index) + " merges invalid components");
  }
  return report;
}

/// JSON trace of a growth run, as emitted by the `trace` subcommand.
inline json growth_to_json(const Instance& g, const Growth& gr, NumFormat fmt = NumFormat::kExact) {
  json events = json::array();
  for (const Event& ev : gr.events) {
    json j = {{"index", ev.index}, {"epsilon", num_to_json(ev.epsilon, fmt)}, {"time", num_to_json(ev.time, fmt)}};
    if (ev.kind == Event::Kind::kEdgeAdded) {
      const Edge& e = g.edge(ev.edge);
      j["kind"] = "edge";
      j["edge"] = json::array({g.label(e.u), g.label(e.v)});
      j["left"] = ev.left;
      j["right"] = ev.right;
      j["left_active"] = ev.left_active;
      j["right_active"] = ev.right_active;
      j["merged"] = ev.merged;
    } else {
      j["kind"] = "deactivate";
      j["component"] = ev.component;
    }
    events.push_back(std::move(j));
  }
  json components = json::array();
  for (const Component& c : gr.family) {
    json vs = json::array();
    for (VertexId v : c.vertices) vs.push_back(g.label(v));
    components.push_back({{"id", c.id},
                          {"vertices", std::move(vs)},
                          {"y", num_to_json(c.y, fmt)},
                          {"h", num_to_json(c.h, fmt)},
                          {"penalty", num_to_json(c.penalty, fmt)},
                          {"parent", c.parent},
                          {"deactivated", c.deactivated()}});
  }
  json d = json::array();
  for (const Num& x : gr.d) d.push_back(num_to_json(x, fmt));
  return {{"events", std::move(events)},
          {"components", std::move(components)},
          {"final_components", gr.final_components},
          {"d", std::move(d)}};
}

}  // namespace pcf

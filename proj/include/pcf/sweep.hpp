#pragma once

#include <algorithm>
#include <utility>
#include <variant>
#include <vector>

#include "pcf/instance.hpp"
#include "pcf/io.hpp"
#include "pcf/metric.hpp"
#include "pcf/moat.hpp"
#include "pcf/prune.hpp"

namespace pcf {

/// A metric instance plus sensor speed a, period t and per-sensor cost c.
class SweepInstance {
 public:
  SweepInstance(Instance graph, Num speed, Num period, Num cost)
      : graph_(std::move(graph)), speed_(std::move(speed)), period_(std::move(period)), cost_(std::move(cost)) {
    if (!speed_.is_positive() || !period_.is_positive() || !cost_.is_positive())
      throw Error(ErrorCode::kDomain, "speed, period and cost must be positive");
    if (!is_metric(graph_)) throw Error(ErrorCode::kNonMetric, "sweep cover needs a complete metric instance");
  }

  const Instance& graph() const { return graph_; }
  const Num& speed() const { return speed_; }
  const Num& period() const { return period_; }
  const Num& cost() const { return cost_; }
  /// Distance one sensor covers in one period.
  Num reach() const { return speed_ * period_; }

  Num distance(VertexId u, VertexId v) const {
    if (u == v) return Num(0);
    return graph_.edge(*graph_.find_edge(u, v)).w;
  }

 private:
  Instance graph_;
  Num speed_;
  Num period_;
  Num cost_;
};

/// Rescales penalties and cost by sigma = 5at/(4c) so that at/c' = 4/5.
inline std::pair<SweepInstance, Num> scale_for_lmp(const SweepInstance& si) {
  const Num sigma = Num(5) * si.reach() / (Num(4) * si.cost());
  std::vector<Num> penalties;
  penalties.reserve(si.graph().n());
  for (const Num& p : si.graph().penalties()) penalties.push_back(p * sigma);
  const Instance& g = si.graph();
  Instance scaled(std::move(penalties), std::vector<Edge>(g.edges().begin(), g.edges().end()),
                  std::vector<std::int64_t>(g.labels().begin(), g.labels().end()));
  return {SweepInstance(std::move(scaled), si.speed(), si.period(), si.cost() * sigma), sigma};
}

struct Cycle {
  std::vector<VertexId> vertices;  // closed: first == last
  Num length;
};

/// Doubles the tree into an Euler tour and shortcuts repeated vertices. The
/// tour is a depth-first walk from the smallest vertex, children ascending.
inline Cycle tree_to_cycle(const SweepInstance& si, std::span<const VertexId> vertices, std::span<const EdgeId> edges) {
  if (vertices.size() < 2) throw Error(ErrorCode::kDomain, "a single vertex gets a stationed sensor, not a cycle");
  const Instance& g = si.graph();
  std::vector<std::vector<VertexId>> adj(g.n());
  for (EdgeId e : edges) {
    adj[g.edge(e).u].push_back(g.edge(e).v);
    adj[g.edge(e).v].push_back(g.edge(e).u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end(), std::greater<>());

  const VertexId start = *std::min_element(vertices.begin(), vertices.end());
  Cycle cycle;
  std::vector<char> seen(g.n(), 0);
  std::vector<VertexId> stack{start};
  while (!stack.empty()) {
    const VertexId u = stack.back();
    stack.pop_back();
    if (seen[u]) continue;
    seen[u] = 1;
    cycle.vertices.push_back(u);
    for (VertexId v : adj[u])
      if (!seen[v]) stack.push_back(v);
  }
  if (cycle.vertices.size() != vertices.size()) throw Error(ErrorCode::kNotATree, "tree edges do not connect its vertices");
  cycle.vertices.push_back(start);
  for (std::size_t i = 0; i + 1 < cycle.vertices.size(); ++i)
    cycle.length += si.distance(cycle.vertices[i], cycle.vertices[i + 1]);
  return cycle;
}

/// Sensors needed so that evenly spaced sensors revisit every point of a
/// cycle within one period. A zero-length cycle still needs one sensor.
inline int sensors_for(const Num& length, const Num& reach) {
  return static_cast<int>(std::max<std::int64_t>(1, (length / reach).ceil()));
}

struct Stationed {
  VertexId vertex = -1;
};

struct Patrol {
  std::vector<VertexId> cycle;
  Num length;
  int sensors = 0;
  Num tree_weight;  // weight of the tree the cycle was cut from
};

using Group = std::variant<Stationed, Patrol>;

/// Per-K bookkeeping of the planner, in scaled units.
struct SweepCandidate {
  int k = 0;
  int sensors = 0;   // n_K
  Num forest_weight;
  Num score;         // c' n_K + 5 pi'(unspanned)
};

struct SweepPlan {
  int k = 0;
  std::vector<Group> groups;
  std::vector<VertexId> uncovered;
  Num objective;  // c |S| + pi(uncovered), original units
  std::vector<SweepCandidate> candidates;

  int sensors() const {
    int total = 0;
    for (const Group& gr : groups) total += std::holds_alternative<Stationed>(gr) ? 1 : std::get<Patrol>(gr).sensors;
    return total;
  }
};

namespace detail {

inline std::vector<Group> groups_of(const SweepInstance& si, const Forest& f) {
  const Instance& g = si.graph();
  std::vector<Group> out;
  DisjointSets sets(g.n());
  for (EdgeId e : f.edges()) sets.unite(g.edge(e).u, g.edge(e).v);
  for (const std::vector<VertexId>& comp : f.components(g)) {
    if (comp.size() == 1) {
      out.emplace_back(Stationed{comp.front()});
      continue;
    }
    std::vector<EdgeId> edges;
    Num weight;
    for (EdgeId e : f.edges())
      if (sets.same(g.edge(e).u, comp.front())) {
        edges.push_back(e);
        weight += g.edge(e).w;
      }
    Cycle c = tree_to_cycle(si, comp, edges);
    const int sensors = sensors_for(c.length, si.reach());
    out.emplace_back(Patrol{std::move(c.vertices), std::move(c.length), sensors, std::move(weight)});
  }
  return out;
}

inline int sensor_count(const std::vector<Group>& groups) {
  int total = 0;
  for (const Group& gr : groups) total += std::holds_alternative<Stationed>(gr) ? 1 : std::get<Patrol>(gr).sensors;
  return total;
}

}  // namespace detail

/// The 5-LMP sweep-cover planner. One growth and one DP table (built for
/// k up to n) serve every K; the K with the smallest scaled score wins, ties
/// to the smaller K.
inline SweepPlan plan_sweep_cover(const SweepInstance& si) {
  const Instance& g = si.graph();
  if (g.n() < 1) throw Error(ErrorCode::kDomain, "sweep cover needs at least one vertex");
  const auto [scaled, sigma] = scale_for_lmp(si);
  const Instance& sg = scaled.graph();
  const Growth gr = rootless_grow(sg);
  const RootedTree aux = build_aux_tree(sg, gr);
  const PruneTable table(aux, g.n());

  SweepPlan plan;
  std::optional<Forest> best;
  std::vector<Group> best_groups;
  for (int k = 1; k <= g.n(); ++k) {
    Forest f = selection_to_forest(sg, aux, table.without_root(k));
    std::vector<Group> groups = detail::groups_of(scaled, f);
    SweepCandidate cand;
    cand.k = k;
    cand.sensors = detail::sensor_count(groups);
    cand.forest_weight = forest_weight(sg, f);
    cand.score = scaled.cost() * Num(cand.sensors) + Num(5) * unspanned_penalty(sg, f);
    if (!best || cand.score < plan.candidates[plan.k - 1].score) {
      plan.k = k;
      best = std::move(f);
      best_groups = std::move(groups);
    }
    plan.candidates.push_back(std::move(cand));
  }

  plan.groups = std::move(best_groups);
  for (VertexId v = 0; v < g.n(); ++v)
    if (!best->spans(v)) plan.uncovered.push_back(v);
  plan.objective = si.cost() * Num(plan.sensors()) + unspanned_penalty(g, *best);
  return plan;
}

struct PlanReport {
  bool ok = true;
  std::vector<std::string> problems;
  Num objective;  // recomputed from the groups

  void fail(std::string why) {
    ok = false;
    problems.push_back(std::move(why));
  }
};

/// Checks that every vertex is covered once or declared uncovered, that
/// stated cycle lengths are right, that each patrol carries enough sensors
/// for a revisit interval of at most t, and that the objective adds up.
inline PlanReport verify_plan(const SweepInstance& si, const SweepPlan& plan) {
  const Instance& g = si.graph();
  PlanReport report;
  std::vector<int> seen(g.n(), 0);
  auto touch = [&](VertexId v) {
    if (v < 0 || v >= g.n()) {
      report.fail("unknown vertex " + std::to_string(v));
      return;
    }
    ++seen[v];
  };

  int sensors = 0;
  for (std::size_t i = 0; i < plan.groups.size(); ++i) {
    const std::string where = "group " + std::to_string(i);
    if (const auto* st = std::get_if<Stationed>(&plan.groups[i])) {
      touch(st->vertex);
      ++sensors;
      continue;
    }
    const Patrol& p = std::get<Patrol>(plan.groups[i]);
    if (p.cycle.size() < 3 || p.cycle.front() != p.cycle.back()) {
      report.fail(where + ": a patrol cycle must close and visit at least two vertices");
      continue;
    }
    bool known = true;
    for (std::size_t j = 0; j + 1 < p.cycle.size(); ++j) {
      if (p.cycle[j] < 0 || p.cycle[j] >= g.n()) known = false;
      touch(p.cycle[j]);
    }
    if (!known) continue;
    Num length;
    for (std::size_t j = 0; j + 1 < p.cycle.size(); ++j) length += si.distance(p.cycle[j], p.cycle[j + 1]);
    if (length != p.length) report.fail(where + ": stated length " + p.length.str() + " but cycle measures " + length.str());
    if (p.sensors < 1) report.fail(where + ": a patrol needs at least one sensor");
    else if (Num(p.sensors) * si.reach() < length)
      report.fail(where + ": revisit interval " + (length / (Num(p.sensors) * si.speed())).str() + " exceeds the period");
    sensors += p.sensors;
  }

  std::vector<char> uncovered(g.n(), 0);
  for (VertexId v : plan.uncovered) {
    if (v < 0 || v >= g.n()) {
      report.fail("unknown uncovered vertex " + std::to_string(v));
      continue;
    }
    if (uncovered[v]) report.fail("vertex " + std::to_string(g.label(v)) + " listed uncovered twice");
    uncovered[v] = 1;
  }
  Num missed;
  for (VertexId v = 0; v < g.n(); ++v) {
    if (seen[v] > 1) report.fail("vertex " + std::to_string(g.label(v)) + " appears in more than one group");
    if (seen[v] && uncovered[v]) report.fail("vertex " + std::to_string(g.label(v)) + " is both covered and uncovered");
    if (!seen[v] && !uncovered[v]) report.fail("vertex " + std::to_string(g.label(v)) + " is neither covered nor uncovered");
    if (uncovered[v]) missed += g.penalty(v);
  }
  if (static_cast<int>(plan.groups.size()) != plan.k)
    report.fail("plan declares K = " + std::to_string(plan.k) + " but has " + std::to_string(plan.groups.size()) + " groups");
  report.objective = si.cost() * Num(sensors) + missed;
  if (report.objective != plan.objective)
    report.fail("stated objective " + plan.objective.str() + " but plan costs " + report.objective.str());
  return report;
}

/// Plan document. `walks`, when given, holds per-group expansions of the
/// cycles into original-graph walks and is emitted alongside each patrol.
inline json plan_to_json(const SweepInstance& si, const SweepPlan& plan, NumFormat fmt = NumFormat::kExact,
                         const std::vector<std::vector<VertexId>>* walks = nullptr) {
  const Instance& g = si.graph();
  auto labels = [&](const std::vector<VertexId>& vs) {
    json out = json::array();
    for (VertexId v : vs) out.push_back(g.label(v));
    return out;
  };
  json groups = json::array();
  for (std::size_t i = 0; i < plan.groups.size(); ++i) {
    if (const auto* st = std::get_if<Stationed>(&plan.groups[i])) {
      groups.push_back({{"type", "stationed"}, {"vertex", g.label(st->vertex)}});
      continue;
    }
    const Patrol& p = std::get<Patrol>(plan.groups[i]);
    json doc = {{"type", "patrol"},
                {"cycle", labels(p.cycle)},
                {"length", num_to_json(p.length, fmt)},
                {"sensors", p.sensors},
                {"tree_weight", num_to_json(p.tree_weight, fmt)}};
    if (walks && i < walks->size() && !(*walks)[i].empty()) doc["walk"] = labels((*walks)[i]);
    groups.push_back(std::move(doc));
  }
  return {{"k", plan.k},
          {"speed", num_to_json(si.speed(), fmt)},
          {"period", num_to_json(si.period(), fmt)},
          {"cost", num_to_json(si.cost(), fmt)},
          {"groups", std::move(groups)},
          {"uncovered", labels(plan.uncovered)},
          {"sensors", plan.sensors()},
          {"objective", num_to_json(plan.objective, fmt)}};
}

inline SweepPlan plan_from_json(const Instance& g, const json& doc) {
  LabelIndex index(g);
  auto ids = [&](const json& arr, std::string_view what) {
    if (!arr.is_array()) throw Error(ErrorCode::kSchema, std::string(what) + " must be an array");
    std::vector<VertexId> out;
    for (const json& v : arr) {
      if (!v.is_number_integer()) throw Error(ErrorCode::kSchema, std::string(what) + " must hold integer ids");
      out.push_back(index.at(v.get<std::int64_t>()));
    }
    return out;
  };
  SweepPlan plan;
  plan.k = detail::int_field(doc, "k");
  for (const json& gr : detail::field(doc, "groups")) {
    const json& type = detail::field(gr, "type");
    if (type == "stationed") {
      plan.groups.emplace_back(Stationed{index.at(detail::int_field(gr, "vertex"))});
    } else if (type == "patrol") {
      Patrol p;
      p.cycle = ids(detail::field(gr, "cycle"), "cycle");
      p.length = num_from_json(detail::field(gr, "length"), "length");
      p.sensors = detail::int_field(gr, "sensors");
      if (gr.contains("tree_weight")) p.tree_weight = num_from_json(gr.at("tree_weight"), "tree_weight");
      plan.groups.emplace_back(std::move(p));
    } else {
      throw Error(ErrorCode::kSchema, "group type must be \"stationed\" or \"patrol\"");
    }
  }
  plan.uncovered = ids(detail::field(doc, "uncovered"), "uncovered");
  plan.objective = num_from_json(detail::field(doc, "objective"), "objective");
  return plan;
}

}  // namespace pcf

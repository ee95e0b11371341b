#include <gtest/gtest.h>

#include "support.hpp"

using namespace pcf;
using pcf::test::N;

namespace {

SweepInstance complete(std::vector<Num> penalties, const std::vector<std::vector<int>>& d, Num a, Num t, Num c) {
  std::vector<Edge> edges;
  for (int u = 0; u < static_cast<int>(d.size()); ++u)
    for (int v = u + 1; v < static_cast<int>(d.size()); ++v) edges.push_back({u, v, Num(d[u][v])});
  return SweepInstance(Instance(std::move(penalties), std::move(edges)), std::move(a), std::move(t), std::move(c));
}

SweepInstance random_sweep(std::uint64_t seed) {
  SplitMix64 rng(seed + 1000);
  const int n = static_cast<int>(rng.uniform(1, 8));
  const int m = static_cast<int>(rng.uniform(n - 1, std::int64_t{n} * (n - 1) / 2));
  const Instance g = generate_connected(seed, n, m, 20, 20);
  const Num a = Num(static_cast<long>(rng.uniform(1, 4)));
  const Num t = Num(static_cast<long>(rng.uniform(1, 10))) / Num(2);
  const Num c = Num(static_cast<long>(rng.uniform(1, 30)));
  return SweepInstance(metric_closure(g).closure, a, t, c);
}

}  // namespace

TEST(SweepInstance, Validation) {
  const Instance tri({Num(1), Num(1), Num(1)}, {{0, 1, Num(1)}, {1, 2, Num(1)}, {0, 2, Num(5)}});
  try {
    SweepInstance(tri, Num(1), Num(1), Num(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonMetric);
  }
  const Instance path({Num(1), Num(1), Num(1)}, {{0, 1, Num(1)}, {1, 2, Num(1)}});
  EXPECT_THROW(SweepInstance(path, Num(1), Num(1), Num(1)), Error);
  EXPECT_THROW(SweepInstance(Instance({Num(1)}, {}), Num(0), Num(1), Num(1)), Error);
  EXPECT_NO_THROW(SweepInstance(Instance({Num(1)}, {}), Num(1), Num(1), Num(1)));
}

TEST(ScaleForLmp, Examples) {
  const Instance one({Num(2)}, {});
  {
    const auto [s, sigma] = scale_for_lmp(SweepInstance(one, Num(1), Num(1), Num(1)));
    EXPECT_EQ(sigma, N("1.25"));
    EXPECT_EQ(s.cost(), N("1.25"));
    EXPECT_EQ(s.reach() / s.cost(), N("0.8"));
    EXPECT_EQ(s.graph().penalty(0), N("2.5"));
  }
  {
    const SweepInstance si(one, Num(4), Num(1), Num(5));
    const auto [s, sigma] = scale_for_lmp(si);
    EXPECT_EQ(sigma, Num(1));
    EXPECT_EQ(s.graph(), si.graph());
    EXPECT_EQ(s.cost(), si.cost());
  }
  {
    const auto [s, sigma] = scale_for_lmp(SweepInstance(one, Num(2), Num(1), Num(5)));
    EXPECT_EQ(sigma, N("0.5"));
    EXPECT_EQ(s.cost(), N("2.5"));
  }
}

TEST(TreeToCycle, SingleEdge) {
  const SweepInstance si = complete({Num(1), Num(1)}, {{0, 3}, {3, 0}}, Num(1), Num(1), Num(1));
  const std::vector<VertexId> vs{0, 1};
  const std::vector<EdgeId> es{0};
  const Cycle c = tree_to_cycle(si, vs, es);
  EXPECT_EQ(c.vertices, (std::vector<VertexId>{0, 1, 0}));
  EXPECT_EQ(c.length, Num(6));
}

TEST(TreeToCycle, PathShortcuts) {
  const SweepInstance si = complete({Num(1), Num(1), Num(1)}, {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}, Num(1), Num(1), Num(1));
  const std::vector<VertexId> vs{0, 1, 2};
  const std::vector<EdgeId> es{*si.graph().find_edge(0, 1), *si.graph().find_edge(1, 2)};
  const Cycle c = tree_to_cycle(si, vs, es);
  EXPECT_EQ(c.vertices, (std::vector<VertexId>{0, 1, 2, 0}));
  EXPECT_EQ(c.length, Num(4));
}

TEST(TreeToCycle, Star) {
  const SweepInstance si = complete({Num(1), Num(1), Num(1), Num(1)},
                                    {{0, 1, 1, 1}, {1, 0, 2, 2}, {1, 2, 0, 2}, {1, 2, 2, 0}}, Num(1), Num(1), Num(1));
  const std::vector<VertexId> vs{0, 1, 2, 3};
  const std::vector<EdgeId> es{*si.graph().find_edge(0, 1), *si.graph().find_edge(0, 2), *si.graph().find_edge(0, 3)};
  const Cycle c = tree_to_cycle(si, vs, es);
  EXPECT_EQ(c.vertices, (std::vector<VertexId>{0, 1, 2, 3, 0}));
  EXPECT_EQ(c.length, Num(6));
  EXPECT_LE(c.length, Num(2) * Num(3));
}

TEST(TreeToCycle, SingletonIsRefused) {
  const SweepInstance si = complete({Num(1)}, {{0}}, Num(1), Num(1), Num(1));
  const std::vector<VertexId> vs{0};
  EXPECT_THROW(tree_to_cycle(si, vs, {}), Error);
}

TEST(SensorsFor, RoundsUpAndKeepsOne) {
  EXPECT_EQ(sensors_for(Num(10), Num(1)), 10);
  EXPECT_EQ(sensors_for(N("10.5"), Num(1)), 11);
  EXPECT_EQ(sensors_for(Num(0), Num(3)), 1);
}

TEST(PlanSweepCover, SingleVertex) {
  const SweepInstance si = complete({Num(4)}, {{0}}, Num(1), Num(1), Num(3));
  const SweepPlan plan = plan_sweep_cover(si);
  EXPECT_EQ(plan.k, 1);
  ASSERT_EQ(plan.groups.size(), 1u);
  EXPECT_TRUE(std::holds_alternative<Stationed>(plan.groups[0]));
  EXPECT_TRUE(plan.uncovered.empty());
  EXPECT_EQ(plan.objective, Num(3));
  EXPECT_TRUE(verify_plan(si, plan).ok);
}

TEST(PlanSweepCover, FarApartCheapVertices) {
  const SweepInstance si = complete({N("0.01"), N("0.01")}, {{0, 1000}, {1000, 0}}, Num(1), Num(1), Num(1));
  const SweepPlan plan = plan_sweep_cover(si);
  EXPECT_TRUE(verify_plan(si, plan).ok);
  const OracleResult lb = sweep_lower_bound(si);
  EXPECT_LE(si.cost() * Num(plan.sensors()) + Num(5) * (plan.objective - si.cost() * Num(plan.sensors())),
            Num(5) * lb.value);
  EXPECT_EQ(plan.sensors(), 1);
}

TEST(PlanSweepCover, FiveLmpAgainstLowerBound) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const SweepInstance si = random_sweep(seed);
    const SweepPlan plan = plan_sweep_cover(si);
    const PlanReport report = verify_plan(si, plan);
    ASSERT_TRUE(report.ok) << seed << ": " << report.problems.front();
    Num missed;
    for (VertexId v : plan.uncovered) missed += si.graph().penalty(v);
    const OracleResult lb = sweep_lower_bound(si);
    EXPECT_LE(si.cost() * Num(plan.sensors()) + Num(5) * missed, Num(5) * lb.value) << seed;
    for (const Group& gr : plan.groups) {
      if (const auto* p = std::get_if<Patrol>(&gr)) {
        EXPECT_LE(p->length, Num(2) * p->tree_weight);
      }
    }
  }
}

TEST(PlanSweepCover, SensorCountBound) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const SweepInstance si = random_sweep(seed);
    const SweepPlan plan = plan_sweep_cover(si);
    for (const SweepCandidate& c : plan.candidates)
      EXPECT_LE(Num(c.sensors), Num(2) * c.forest_weight / si.reach() + Num(c.k)) << seed << " K " << c.k;
  }
}

TEST(PlanSweepCover, SelectionIgnoresCommonScale) {
  // Multiplying c and every penalty by the same factor leaves the chosen K alone.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SweepInstance si = random_sweep(seed);
    std::vector<Num> p;
    for (const Num& x : si.graph().penalties()) p.push_back(x * Num(3));
    const Instance& g = si.graph();
    const SweepInstance tripled(Instance(p, std::vector<Edge>(g.edges().begin(), g.edges().end())), si.speed(),
                                si.period(), si.cost() * Num(3));
    EXPECT_EQ(plan_sweep_cover(si).k, plan_sweep_cover(tripled).k) << seed;
  }
}

TEST(VerifyPlan, RevisitBoundary) {
  // Four points on a square of side 2.5; the tour is 10 long.
  std::vector<std::vector<int>> d = {{0, 5, 10, 5}, {5, 0, 5, 10}, {10, 5, 0, 5}, {5, 10, 5, 0}};
  std::vector<Edge> edges;
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) edges.push_back({u, v, Num(d[u][v]) / Num(2)});
  const SweepInstance si(Instance({Num(1), Num(1), Num(1), Num(1)}, edges), Num(1), Num(1), Num(1));
  SweepPlan plan;
  plan.k = 1;
  plan.groups.emplace_back(Patrol{{0, 1, 2, 3, 0}, Num(10), 10, Num(0)});
  plan.objective = Num(10);
  EXPECT_TRUE(verify_plan(si, plan).ok);
  std::get<Patrol>(plan.groups[0]).sensors = 9;
  plan.objective = Num(9);
  const PlanReport r = verify_plan(si, plan);
  EXPECT_FALSE(r.ok);
}

TEST(VerifyPlan, CatchesBookkeepingErrors) {
  const SweepInstance si = complete({Num(2), Num(3)}, {{0, 1}, {1, 0}}, Num(1), Num(1), Num(1));
  SweepPlan plan;
  plan.k = 1;
  plan.groups.emplace_back(Stationed{0});
  plan.objective = Num(1);
  EXPECT_FALSE(verify_plan(si, plan).ok);  // vertex 1 unaccounted for
  plan.uncovered = {1};
  EXPECT_FALSE(verify_plan(si, plan).ok);  // objective misses pi(1)
  plan.objective = Num(4);
  EXPECT_TRUE(verify_plan(si, plan).ok);
  plan.uncovered = {0, 1};
  plan.objective = Num(6);
  EXPECT_FALSE(verify_plan(si, plan).ok);  // vertex 0 both covered and uncovered
}

TEST(PlanJson, RoundTrip) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SweepInstance si = random_sweep(seed);
    const SweepPlan plan = plan_sweep_cover(si);
    const json doc = plan_to_json(si, plan);
    const SweepPlan back = plan_from_json(si.graph(), doc);
    EXPECT_TRUE(verify_plan(si, back).ok);
    EXPECT_EQ(back.objective, plan.objective);
    EXPECT_EQ(plan_to_json(si, back).dump(), doc.dump());
  }
}

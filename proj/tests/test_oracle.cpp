#include <gtest/gtest.h>

#include "support.hpp"

using namespace pcf;
using pcf::test::N;

TEST(OptUrpcf, HeavyEndsPath) {
  const Instance g = test::path5();
  EXPECT_EQ(opt_urpcf(g, 2).value, Num(3));
  EXPECT_EQ(opt_urpcf(g, 1).value, Num(23));
  EXPECT_EQ(opt_urpcf(g, 5).value, Num(0));
  const OracleResult r = opt_urpcf(g, 2);
  EXPECT_EQ(cost_plus_penalty(g, r.witness), r.value);
  EXPECT_EQ(r.witness.k(), 2);
}

TEST(OptUrpcf, AllSingletonsAtKEqualsN) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance g = test::random_instance(seed);
    EXPECT_EQ(opt_urpcf(g, g.n()).value, Num(0));
  }
}

TEST(OptUrpcf, GuardsAndRange) {
  const Instance g = test::path5();
  EXPECT_THROW(opt_urpcf(g, 0), Error);
  EXPECT_THROW(opt_urpcf(g, 6), Error);
  const Instance big = generate_random(1, 17, 0, 1, 1);
  try {
    opt_urpcf(big, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_TRUE(e.is_guard());
  }
}

TEST(OptUrpcf, NoSampledForestBeatsIt) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance g = test::random_instance(seed);
    SplitMix64 rng(seed + 5);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<VertexId> vs;
      for (VertexId v = 0; v < g.n(); ++v)
        if (rng.uniform(0, 3)) vs.push_back(v);
      if (vs.empty()) continue;
      std::vector<char> in(g.n(), 0);
      for (VertexId v : vs) in[v] = 1;
      DisjointSets sets(g.n());
      std::vector<EdgeId> es;
      for (EdgeId e = 0; e < g.m(); ++e)
        if (in[g.edge(e).u] && in[g.edge(e).v] && rng.uniform(0, 1) && sets.unite(g.edge(e).u, g.edge(e).v))
          es.push_back(e);
      const Forest f = Forest::make(g, vs, es);
      ASSERT_LE(opt_urpcf(g, f.k()).value, cost_plus_penalty(g, f)) << seed;
    }
  }
}

TEST(OptRpcf, RootsEverywhereCostNothing) {
  const Instance g = test::path5();
  const std::vector<VertexId> all{0, 1, 2, 3, 4};
  EXPECT_EQ(opt_rpcf(g, all).value, Num(0));
}

TEST(OptRpcf, TwoVertices) {
  const Instance g({Num(1), Num(5)}, {{0, 1, Num(4)}});
  const std::vector<VertexId> roots{1};
  const OracleResult r = opt_rpcf(g, roots);
  EXPECT_EQ(r.value, Num(1));
  EXPECT_FALSE(r.witness.spans(0));
}

TEST(OptRpcf, EqualsUnrootedOptimumWithOptimalRoots) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance g = test::random_instance(seed, 8, 16);
    for (int k = 1; k <= g.n(); ++k) {
      const OracleResult u = opt_urpcf(g, k);
      const std::vector<VertexId> roots = test::roots_from(g, u.witness);
      const OracleResult r = opt_rpcf(g, roots);
      ASSERT_EQ(r.value, u.value) << seed << " " << k;
      ASSERT_EQ(cost_plus_penalty(g, r.witness), r.value);
    }
  }
}

TEST(OptRpcf, Guards) {
  const Instance g = generate_random(3, 10, 21, 5, 5);
  const std::vector<VertexId> roots{0};
  EXPECT_THROW(opt_rpcf(g, roots), Error);
  const std::vector<VertexId> bad{11};
  EXPECT_THROW(opt_rpcf(test::path5(), bad), Error);
}

TEST(OptNwKforest, Star) {
  const Instance star = test::star5();
  EXPECT_EQ(opt_nw_kforest(star, 0).value, Num(0));
  EXPECT_EQ(opt_nw_kforest(star, 1).value, N("17.4"));
  EXPECT_EQ(opt_nw_kforest(star, 2).value, N("28.4"));
  EXPECT_EQ(opt_nw_kforest(star, 3).value, N("40.4"));
  EXPECT_EQ(opt_nw_kforest(star, 4).value, N("51.4"));
  EXPECT_EQ(opt_nw_kforest(star, 5).value, N("55.4"));
  EXPECT_THROW(opt_nw_kforest(star, 6), Error);
  EXPECT_THROW(opt_nw_kforest(generate_tree(1, 15, 3, 3), 1), Error);
}

TEST(SweepLowerBound, SingleVertex) {
  const SweepInstance si(Instance({Num(9)}, {}), Num(1), Num(1), Num(4));
  const OracleResult lb = sweep_lower_bound(si);
  EXPECT_EQ(lb.value, Num(4));
  EXPECT_EQ(lb.k, 1);
}

TEST(SweepLowerBound, CoincidentVertices) {
  const SweepInstance si(Instance({Num(9), Num(9)}, {{0, 1, Num(0)}}), Num(1), Num(1), Num(4));
  const OracleResult lb = sweep_lower_bound(si);
  EXPECT_EQ(lb.value, Num(4));
  EXPECT_EQ(lb.witness.spanned().size(), 2u);
}

TEST(SweepLowerBound, BelowEveryValidPlan) {
  // Every (K, U) with a cycle cover passes verify_plan; sample such plans from
  // groupings of the vertices and check none undercuts the bound.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SplitMix64 rng(seed);
    const int n = static_cast<int>(rng.uniform(1, 6));
    const Instance g = metric_closure(generate_connected(seed, n, n - 1, 10, 10)).closure;
    const SweepInstance si(g, Num(1), Num(static_cast<long>(rng.uniform(1, 8))), Num(static_cast<long>(rng.uniform(1, 10))));
    const Num lb = sweep_lower_bound(si).value;
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<int> group(n);
      for (int& x : group) x = static_cast<int>(rng.uniform(-1, 2));
      SweepPlan plan;
      Num missed;
      for (int label = 0; label <= 2; ++label) {
        std::vector<VertexId> members;
        for (VertexId v = 0; v < n; ++v)
          if (group[v] == label) members.push_back(v);
        if (members.empty()) continue;
        if (members.size() == 1) {
          plan.groups.emplace_back(Stationed{members[0]});
          continue;
        }
        Patrol p;
        p.cycle = members;
        p.cycle.push_back(members[0]);
        for (std::size_t i = 0; i + 1 < p.cycle.size(); ++i) p.length += si.distance(p.cycle[i], p.cycle[i + 1]);
        p.sensors = sensors_for(p.length, si.reach());
        plan.groups.emplace_back(std::move(p));
      }
      if (plan.groups.empty()) continue;
      for (VertexId v = 0; v < n; ++v)
        if (group[v] < 0) {
          plan.uncovered.push_back(v);
          missed += g.penalty(v);
        }
      plan.k = static_cast<int>(plan.groups.size());
      plan.objective = si.cost() * Num(plan.sensors()) + missed;
      ASSERT_TRUE(verify_plan(si, plan).ok);
      ASSERT_LE(lb, plan.objective) << seed;
    }
  }
}

TEST(SweepLowerBound, Guard) {
  const Instance g = metric_closure(generate_connected(2, 11, 10, 5, 5)).closure;
  EXPECT_THROW(sweep_lower_bound(SweepInstance(g, Num(1), Num(1), Num(1))), Error);
}

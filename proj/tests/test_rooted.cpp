#include <gtest/gtest.h>

#include "support.hpp"

using namespace pcf;
using pcf::test::N;

namespace {

std::vector<VertexId> roots_of(std::initializer_list<VertexId> r) { return r; }

}  // namespace

TEST(KForestStep, DeletesTheLatestEdgeOnTheRootPath) {
  // a-b tight first, then b-c; roots {a, c} split at b-c.
  const Instance g({Num(10), Num(10), Num(10)}, {{0, 1, Num(2)}, {1, 2, Num(4)}});
  const Growth gr = rootless_grow(g);
  ASSERT_EQ(gr.forest_edges, (std::vector<EdgeId>{0, 1}));
  std::vector<EdgeId> removed;
  const auto roots = roots_of({0, 2});
  const Forest f = k_forest_step(g, gr, roots, &removed);
  EXPECT_EQ(removed, std::vector<EdgeId>{1});
  EXPECT_EQ(f.k(), 2);
}

TEST(KForestStep, LatestIsNotAlwaysHeaviest) {
  // Path r1 - x - y - r2; x-y tightens at 1, y-r2 at 2.5, r1-x at 3.
  const Instance g({Num(0), Num(20), Num(20), Num(20)}, {{1, 2, Num(2)}, {2, 3, Num(5)}, {0, 1, Num(3)}});
  const Growth gr = rootless_grow(g);
  ASSERT_EQ(gr.forest_edges, (std::vector<EdgeId>{0, 1, 2}));
  std::vector<EdgeId> removed;
  const auto roots = roots_of({0, 3});
  k_forest_step(g, gr, roots, &removed);
  EXPECT_EQ(removed, std::vector<EdgeId>{2});
}

TEST(KForestStep, DropsRootlessComponents) {
  const Instance g({Num(10), Num(10), Num(10), Num(10)}, {{0, 1, Num(1)}, {2, 3, Num(1)}});
  const Growth gr = rootless_grow(g);
  const auto roots = roots_of({3});
  const Forest f = k_forest_step(g, gr, roots);
  EXPECT_EQ(std::vector<VertexId>(f.spanned().begin(), f.spanned().end()), (std::vector<VertexId>{2, 3}));
}

TEST(KForestStep, EveryTreeEndsWithOneRoot) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Instance g = test::random_instance(seed, 12, 30);
    const Growth gr = rootless_grow(g);
    SplitMix64 rng(seed + 99);
    std::vector<VertexId> roots;
    for (VertexId v = 0; v < g.n(); ++v)
      if (rng.uniform(0, 2) == 0) roots.push_back(v);
    if (roots.empty()) roots.push_back(0);
    const Forest f = k_forest_step(g, gr, roots);
    std::vector<char> is_root(g.n(), 0);
    for (VertexId r : roots) is_root[r] = 1;
    for (const auto& comp : f.components(g)) {
      int count = 0;
      for (VertexId v : comp) count += is_root[v];
      ASSERT_EQ(count, 1) << seed;
    }
  }
}

TEST(ReverseDelete, SixVertexGrowth) {
  const Instance g = test::six_vertex_growth();
  const auto roots = roots_of({0});
  const Forest f = solve_rpcf(g, roots);
  EXPECT_EQ(std::vector<VertexId>(f.spanned().begin(), f.spanned().end()), (std::vector<VertexId>{0, 1, 2, 3}));
  // e1 = CD, e6 = AB, e8 = BC survive; DF and the {E, F} pair are pruned.
  EXPECT_EQ(std::vector<EdgeId>(f.edges().begin(), f.edges().end()), (std::vector<EdgeId>{0, 3, 4}));
}

TEST(ReverseDelete, KeepsRootSide) {
  const Instance g({Num(1), Num(5)}, {{0, 1, Num(4)}});
  const auto keep_u = roots_of({0});
  EXPECT_EQ(solve_rpcf(g, keep_u).edges().size(), 1u);
}

TEST(SolveRpcf, TwoVerticesRootV) {
  // u is inactive when the edge goes tight, rootless and a leaf, so it is pruned.
  const Instance g({Num(1), Num(5)}, {{0, 1, Num(4)}});
  const auto roots = roots_of({1});
  const Forest f = solve_rpcf(g, roots);
  EXPECT_TRUE(f.edges().empty());
  EXPECT_EQ(std::vector<VertexId>(f.spanned().begin(), f.spanned().end()), std::vector<VertexId>{1});
  const OracleResult opt = opt_rpcf(g, roots);
  EXPECT_EQ(opt.value, Num(1));
  EXPECT_EQ(lmp_value(g, f, Num(2)), Num(2));
  EXPECT_LE(lmp_value(g, f, Num(2)), Num(2) * opt.value);
}

TEST(SolveRpcf, RootsOutOfRange) {
  const Instance g = test::path5();
  const std::vector<VertexId> none;
  EXPECT_THROW(solve_rpcf(g, none), Error);
  const auto bad = roots_of({7});
  EXPECT_THROW(solve_rpcf(g, bad), Error);
  const auto dup = roots_of({1, 1});
  EXPECT_THROW(solve_rpcf(g, dup), Error);
}

TEST(SolveRpcf, OutputIsRootedForest) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance g = test::random_instance(seed);
    SplitMix64 rng(seed * 31 + 7);
    std::vector<VertexId> roots;
    for (VertexId v = 0; v < g.n(); ++v)
      if (rng.uniform(0, 3) == 0) roots.push_back(v);
    if (roots.empty()) roots.push_back(static_cast<VertexId>(rng.uniform(0, g.n() - 1)));
    const Forest f = solve_rpcf(g, roots);
    EXPECT_EQ(f.k(), static_cast<int>(roots.size())) << seed;
    for (VertexId r : roots) EXPECT_TRUE(f.spans(r));
  }
}

TEST(SolveRpcf, TwoLmpAgainstOracle) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance g = test::random_instance(seed);
    SplitMix64 rng(seed * 17 + 3);
    std::vector<VertexId> roots;
    for (VertexId v = 0; v < g.n(); ++v)
      if (rng.uniform(0, 2) == 0) roots.push_back(v);
    if (roots.empty()) roots.push_back(static_cast<VertexId>(rng.uniform(0, g.n() - 1)));
    const Growth gr = rootless_grow(g);
    const Forest f = solve_rpcf(g, gr, roots);
    const OracleResult opt = opt_rpcf(g, roots);
    EXPECT_LE(lmp_value(g, f, Num(2)), Num(2) * opt.value) << seed;
    const RootedCertificate cert = rooted_certificate(g, gr, f, roots);
    EXPECT_TRUE(cert.holds()) << seed << ": " << cert.lhs << " > " << cert.rhs;
    EXPECT_LE(cert.rhs, Num(2) * opt.value) << seed;
  }
}

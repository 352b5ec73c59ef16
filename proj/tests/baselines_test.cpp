#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cmf/baselines.hpp"
#include "cmf/generator.hpp"

namespace cmf {
namespace {

FlowNetwork single(Capacity c) { return FlowNetwork(2, {{0, 1, c}}, 0, 1); }
FlowNetwork diamond() { return FlowNetwork(4, {{0, 1, 3}, {0, 2, 3}, {1, 3, 4}, {2, 3, 4}}, 0, 3); }

// Minimum over every s-t bipartition; only for tiny n.
Capacity brute_min_cut(const FlowNetwork& net) {
  const VertexId n = net.vertex_count();
  Capacity best = -1;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (!(mask >> net.source() & 1u) || (mask >> net.sink() & 1u)) continue;
    Capacity cut = 0;
    for (const Arc& a : net.arcs()) {
      if ((mask >> a.tail & 1u) && !(mask >> a.head & 1u)) cut += a.capacity;
    }
    if (best < 0 || cut < best) best = cut;
  }
  return best;
}

FlowNetwork random_tiny(std::mt19937_64& rng) {
  const VertexId n = std::uniform_int_distribution<VertexId>(2, 8)(rng);
  const int m = std::uniform_int_distribution<int>(0, 20)(rng);
  std::vector<Arc> arcs;
  std::uniform_int_distribution<VertexId> vx(0, n - 1);
  std::uniform_int_distribution<Capacity> cap(0, 9);
  while (static_cast<int>(arcs.size()) < m) {
    const VertexId u = vx(rng);
    const VertexId v = vx(rng);
    if (u != v) arcs.push_back({u, v, cap(rng)});
  }
  return FlowNetwork(n, arcs, 0, n - 1);
}

TEST(EdmondsKarp, Examples) {
  EXPECT_EQ(edmonds_karp(single(5)).value, 5);
  EXPECT_EQ(edmonds_karp(diamond()).value, 6);
  EXPECT_EQ(edmonds_karp(FlowNetwork(3, {{0, 1, 5}}, 0, 2)).value, 0);
}

TEST(GoldbergTarjan, Examples) {
  EXPECT_EQ(goldberg_tarjan(single(5)).value, 5);
  EXPECT_EQ(goldberg_tarjan(diamond()).value, 6);
  EXPECT_EQ(goldberg_tarjan(FlowNetwork(3, {{0, 1, 0}, {1, 2, 0}}, 0, 2)).value, 0);
}

TEST(AhujaOrlin, Examples) {
  EXPECT_EQ(ahuja_orlin(single(5)).value, 5);
  const BaselineResult unit = ahuja_orlin(FlowNetwork(4, {{0, 1, 1}, {1, 3, 1}, {0, 2, 1}, {2, 3, 1}}, 0, 3));
  EXPECT_EQ(unit.value, 2);
  EXPECT_LE(unit.phases, 3);
}

TEST(Baselines, AllAgreeWithBruteForceMinCut) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 400; ++trial) {
    const FlowNetwork net = random_tiny(rng);
    const Capacity truth = brute_min_cut(net);
    for (const BaselineResult& r : {edmonds_karp(net), goldberg_tarjan(net), ahuja_orlin(net)}) {
      ASSERT_EQ(r.value, truth) << "trial " << trial;
      const FlowVerdict v = verify_flow(net, r.state);
      ASSERT_TRUE(v.verdict.ok()) << v.verdict.message;
      ASSERT_EQ(v.value, truth);
      ASSERT_EQ(min_cut_check(net, r.state).capacity, truth);
    }
  }
}

TEST(Baselines, AgreeOnGeneratedFamiliesAndPhaseBound) {
  for (std::uint64_t seed = 1; seed <= 45; ++seed) {
    GeneratorSpec spec;
    spec.family = static_cast<Family>(seed % 3);
    spec.n = 50;
    spec.m = 140;
    spec.max_capacity = seed % 2 == 0 ? 1024 : 7;
    spec.seed = seed;
    const FlowNetwork net = generate(spec);
    const Capacity ek = edmonds_karp(net).value;
    EXPECT_EQ(goldberg_tarjan(net).value, ek);
    const BaselineResult ao = ahuja_orlin(net);
    EXPECT_EQ(ao.value, ek);
    const int log_u = static_cast<int>(std::ceil(std::log2(static_cast<double>(net.max_capacity()))));
    EXPECT_LE(ao.phases, log_u + 2);
  }
}

TEST(MinCutCheck, SaturatedSingleArc) {
  const FlowNetwork net = single(5);
  const CutCertificate cut = min_cut_check(net, ResidualState(net, {5}));
  EXPECT_EQ(cut.source_side, std::vector<VertexId>{0});
  EXPECT_EQ(cut.capacity, 5);
}

TEST(MinCutCheck, DiamondAtSix) {
  const FlowNetwork net = diamond();
  EXPECT_EQ(min_cut_check(net, ResidualState(net, {3, 3, 3, 3})).capacity, 6);
}

TEST(MinCutCheck, HalfFinishedFlowIsNotMaximal) {
  const FlowNetwork net = diamond();
  EXPECT_THROW(min_cut_check(net, ResidualState(net, {3, 0, 3, 0})), CertificateError);
}

TEST(MinCutCheck, InfeasibleStateIsUsageError) {
  const FlowNetwork net = diamond();
  EXPECT_THROW(min_cut_check(net, ResidualState(net, {3, 0, 0, 0})), UsageError);
}

Capacity total_to_sink(const FlowNetwork& net, const std::vector<PathFlow>& parts) {
  Capacity sum = 0;
  for (const PathFlow& p : parts) {
    if (!p.cycle && p.vertices.back() == net.sink()) sum += p.amount;
  }
  return sum;
}

void expect_well_formed(const FlowNetwork& net, const std::vector<PathFlow>& parts) {
  for (const PathFlow& p : parts) {
    ASSERT_GT(p.amount, 0);
    ASSERT_EQ(p.vertices.size(), p.arcs.size() + 1);
    for (std::size_t i = 0; i < p.arcs.size(); ++i) {
      ASSERT_EQ(net.arc(p.arcs[i]).tail, p.vertices[i]);
      ASSERT_EQ(net.arc(p.arcs[i]).head, p.vertices[i + 1]);
    }
    if (p.cycle) {
      ASSERT_EQ(p.vertices.front(), p.vertices.back());
    } else {
      ASSERT_EQ(p.vertices.front(), net.source());
    }
  }
}

TEST(DecomposeFlow, SingleArc) {
  const FlowNetwork net = single(5);
  const auto parts = decompose_flow(net, ResidualState(net, {5}));
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0].vertices, (std::vector<VertexId>{0, 1}));
  EXPECT_EQ(parts[0].amount, 5);
}

TEST(DecomposeFlow, DiamondTwoPaths) {
  const FlowNetwork net = diamond();
  const ResidualState st(net, {3, 3, 3, 3});
  const auto parts = decompose_flow(net, st);
  expect_well_formed(net, parts);
  EXPECT_EQ(parts.size(), 2u);
  EXPECT_EQ(total_to_sink(net, parts), 6);
  EXPECT_EQ(recompose(net, parts), st.arc_flows());
}

TEST(DecomposeFlow, ZeroFlowIsEmpty) {
  const FlowNetwork net = diamond();
  EXPECT_TRUE(decompose_flow(net, ResidualState(net)).empty());
}

TEST(DecomposeFlow, CyclesAreReportedSeparately) {
  // s->a->t plus a circulation a->b->a.
  const FlowNetwork net(4, {{0, 1, 5}, {1, 3, 5}, {1, 2, 2}, {2, 1, 2}}, 0, 3);
  const ResidualState st(net, {4, 4, 2, 2});
  const auto parts = decompose_flow(net, st);
  expect_well_formed(net, parts);
  int cycles = 0;
  for (const PathFlow& p : parts) cycles += p.cycle ? 1 : 0;
  EXPECT_EQ(cycles, 1);
  EXPECT_EQ(total_to_sink(net, parts), 4);
  EXPECT_EQ(recompose(net, parts), st.arc_flows());
}

TEST(DecomposeFlow, PreflowPathsEndAtExcessVertices) {
  const FlowNetwork net(3, {{0, 1, 5}, {1, 2, 2}}, 0, 2);
  const ResidualState st(net, {5, 2});
  const auto parts = decompose_flow(net, st);
  expect_well_formed(net, parts);
  EXPECT_EQ(recompose(net, parts), st.arc_flows());
  EXPECT_EQ(total_to_sink(net, parts), 2);
}

TEST(DecomposeFlow, RecomposesSolverFlowsAndStaysWithinM) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const FlowNetwork net = random_tiny(rng);
    const BaselineResult r = goldberg_tarjan(net);
    const auto parts = decompose_flow(net, r.state);
    expect_well_formed(net, parts);
    EXPECT_EQ(recompose(net, parts), r.state.arc_flows());
    EXPECT_EQ(total_to_sink(net, parts), r.value);
    EXPECT_LE(static_cast<ArcIndex>(parts.size()), std::max<ArcIndex>(net.arc_count(), 0));
  }
}

TEST(DecomposeFlow, InfeasibleInputRejected) {
  const FlowNetwork net = single(5);
  EXPECT_THROW(decompose_flow(net, ResidualState(net, {6})), UsageError);
}

}  // namespace
}  // namespace cmf

#include <gtest/gtest.h>

#include <algorithm>

#include "cmf/baselines.hpp"
#include "cmf/generator.hpp"
#include "cmf/transform.hpp"

namespace cmf {
namespace {

int max_degree(const FlowNetwork& net) {
  const auto in = net.in_degrees();
  const auto out = net.out_degrees();
  return std::max(*std::max_element(in.begin(), in.end()), *std::max_element(out.begin(), out.end()));
}

FlowNetwork star() { return FlowNetwork(5, {{0, 1, 9}, {1, 2, 4}, {1, 3, 2}, {1, 4, 3}}, 0, 4); }

// n=7, m=10, d=4; vertex 1 has out-degree 5.
FlowNetwork wide_star() {
  return FlowNetwork(7, {{0, 1, 9}, {1, 2, 7}, {1, 3, 2}, {1, 4, 3}, {1, 5, 1}, {1, 6, 5}, {2, 6, 4},
                         {3, 6, 4}, {4, 6, 4}, {5, 6, 4}},
                     0, 6);
}

TEST(DegreeBound, FloorPlusThree) {
  EXPECT_EQ(degree_bound(star()), 3);
  EXPECT_EQ(degree_bound(FlowNetwork(100, std::vector<Arc>(300, Arc{0, 1, 1}), 0, 99)), 6);
}

TEST(ToBoundedDegree, StarCenterSplitsIntoTwoCopies) {
  // n=5, m=4, d=3; the center 1 has out-degree 4.
  const FlowNetwork net(5, {{1, 0, 1}, {1, 2, 4}, {1, 3, 2}, {1, 4, 3}}, 0, 4);
  ASSERT_EQ(degree_bound(net), 3);
  const DegreeReduction red = to_bounded_degree(net);
  EXPECT_EQ(red.copies(1), 2);
  EXPECT_LE(max_degree(red.reduced), 3);
  const BaselineResult r = edmonds_karp(red.reduced);
  EXPECT_EQ(r.value, edmonds_karp(net).value);
  const ResidualState back = map_flow_back(red, r.state);
  EXPECT_EQ(verify_flow(net, back).value, r.value);
  for (ArcIndex a = 0; a < net.arc_count(); ++a) EXPECT_EQ(back.flow(a), r.state.flow(a));
}

TEST(ToBoundedDegree, BoundedNetworkIsIdentity) {
  const FlowNetwork path(4, {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}}, 0, 3);
  const DegreeReduction red = to_bounded_degree(path);
  EXPECT_TRUE(red.is_identity());
  EXPECT_EQ(red.reduced, path);
  for (VertexId u = 0; u < 4; ++u) EXPECT_EQ(red.vertex_map[u], std::vector<VertexId>{u});
}

TEST(ToBoundedDegree, WideStarKeepsValueAndMapsBack) {
  const FlowNetwork net = wide_star();
  const DegreeReduction red = to_bounded_degree(net);
  EXPECT_FALSE(red.is_identity());
  EXPECT_LE(max_degree(red.reduced), red.degree_bound);
  const BaselineResult on_reduced = edmonds_karp(red.reduced);
  EXPECT_EQ(on_reduced.value, edmonds_karp(net).value);
  const ResidualState back = map_flow_back(red, on_reduced.state);
  const FlowVerdict v = verify_flow(net, back);
  EXPECT_TRUE(v.verdict.ok()) << v.verdict.message;
  EXPECT_EQ(v.value, on_reduced.value);
  for (ArcIndex a = 0; a < net.arc_count(); ++a) EXPECT_EQ(back.flow(a), on_reduced.state.flow(a));
}

TEST(ToBoundedDegree, OriginalArcsKeepTheirIndices) {
  const FlowNetwork net = wide_star();
  const DegreeReduction red = to_bounded_degree(net);
  for (ArcIndex a = 0; a < net.arc_count(); ++a) {
    const Arc& orig = net.arc(a);
    const Arc& image = red.reduced.arc(a);
    EXPECT_EQ(image.capacity, orig.capacity);
    const auto& tails = red.vertex_map[orig.tail];
    const auto& heads = red.vertex_map[orig.head];
    EXPECT_NE(std::find(tails.begin(), tails.end(), image.tail), tails.end());
    EXPECT_NE(std::find(heads.begin(), heads.end(), image.head), heads.end());
  }
  for (ArcIndex a = net.arc_count(); a < red.reduced.arc_count(); ++a) {
    EXPECT_EQ(red.reduced.arc(a).capacity, red.infinite_capacity);
  }
  EXPECT_GT(red.infinite_capacity, static_cast<Capacity>(net.vertex_count()) * net.max_capacity());
}

TEST(ToBoundedDegree, RandomSparseHundredThreeHundred) {
  GeneratorSpec spec;
  spec.family = Family::kStarHeavy;
  spec.n = 100;
  spec.m = 300;
  spec.max_capacity = 1000;
  spec.seed = 3;
  const FlowNetwork net = generate(spec);
  const DegreeReduction red = to_bounded_degree(net);
  EXPECT_EQ(red.degree_bound, 6);
  EXPECT_LE(max_degree(red.reduced), 6);
  EXPECT_EQ(edmonds_karp(red.reduced).value, edmonds_karp(net).value);
}

TEST(ToBoundedDegree, SizeAndDegreeAcrossFamilies) {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    GeneratorSpec spec;
    spec.family = seed % 2 == 0 ? Family::kStarHeavy : Family::kRandomSparse;
    spec.n = static_cast<VertexId>(10 + seed * 3);
    spec.m = static_cast<ArcIndex>(spec.n * (1 + seed % 3));
    spec.max_capacity = 64;
    spec.seed = seed;
    const FlowNetwork net = generate(spec);
    const DegreeReduction red = to_bounded_degree(net);
    const int d = degree_bound(net);
    EXPECT_LE(max_degree(red.reduced), d);
    EXPECT_LE(red.reduced.vertex_count(), 4 * net.vertex_count());
    EXPECT_LE(red.reduced.arc_count(), 4 * net.arc_count());
    int k = 1;
    for (VertexId u = 0; u < net.vertex_count(); ++u) k = std::max(k, red.copies(u));
    EXPECT_LE(red.reduced.vertex_count(), net.vertex_count() + k * net.vertex_count());
    const BaselineResult r = edmonds_karp(red.reduced);
    EXPECT_EQ(r.value, edmonds_karp(net).value);
    EXPECT_TRUE(verify_flow(net, map_flow_back(red, r.state)).verdict.ok());
    if (!red.is_identity()) ++checked;
  }
  EXPECT_GT(checked, 20);
}

TEST(MapFlowBack, ZeroAndIdentity) {
  const FlowNetwork net = wide_star();
  const DegreeReduction red = to_bounded_degree(net);
  const ResidualState zero = map_flow_back(red, ResidualState(red.reduced));
  for (ArcIndex a = 0; a < net.arc_count(); ++a) EXPECT_EQ(zero.flow(a), 0);

  const FlowNetwork path(3, {{0, 1, 3}, {1, 2, 3}}, 0, 2);
  const DegreeReduction id = to_bounded_degree(path);
  const ResidualState back = map_flow_back(id, ResidualState(path, {2, 2}));
  EXPECT_EQ(back.arc_flows(), (std::vector<Capacity>{2, 2}));
}

TEST(MapFlowBack, InfeasibleInputCarriesVerifierMessage) {
  const FlowNetwork path(3, {{0, 1, 3}, {1, 2, 3}}, 0, 2);
  const DegreeReduction id = to_bounded_degree(path);
  try {
    map_flow_back(id, ResidualState(path, {3, 1}));
    FAIL() << "accepted an infeasible flow";
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("conservation"), std::string::npos) << e.what();
  }
}

TEST(InOutSplit, SingleVertexBecomesPath) {
  const FlowNetwork net(3, {{0, 1, 4}, {1, 2, 6}}, 0, 2);
  const InOutSplit split(net, {1});
  const FlowNetwork& g = split.network();
  EXPECT_EQ(g.vertex_count(), 4);
  const VertexId out = split.out_vertex(1);
  EXPECT_EQ(g.arc(0), (Arc{0, 1, 4}));
  EXPECT_EQ(g.arc(1), (Arc{out, 2, 6}));
  const Arc& bridge = g.arc(split.bridge_arc(1));
  EXPECT_EQ(bridge.tail, 1);
  EXPECT_EQ(bridge.head, out);
  EXPECT_EQ(edmonds_karp(g).value, 4);
}

TEST(InOutSplit, EmptyTargetsIsIdentity) {
  const FlowNetwork net(3, {{0, 1, 4}, {1, 2, 6}}, 0, 2);
  const InOutSplit split(net, {});
  EXPECT_EQ(split.network(), net);
  EXPECT_FALSE(split.is_split(1));
}

TEST(InOutSplit, DiamondKeepsValueAndBridgeDeletionDisconnects) {
  const FlowNetwork net(4, {{0, 1, 3}, {0, 2, 3}, {1, 3, 4}, {2, 3, 4}}, 0, 3);
  InOutSplit split(net, {1, 2});
  EXPECT_EQ(edmonds_karp(split.network()).value, edmonds_karp(net).value);
  EXPECT_EQ(edmonds_karp(split.network()).value, 6);
  split.delete_bridge(1);
  EXPECT_TRUE(split.bridge_deleted(1));
  EXPECT_EQ(edmonds_karp(split.current_network()).value, 3);
  split.delete_bridge(2);
  EXPECT_EQ(edmonds_karp(split.current_network()).value, 0);
}

TEST(InOutSplit, TerminalsCannotBeSplit) {
  const FlowNetwork net(3, {{0, 1, 4}, {1, 2, 6}}, 0, 2);
  EXPECT_THROW(InOutSplit(net, {0}), UsageError);
  EXPECT_THROW(InOutSplit(net, {2}), UsageError);
}

}  // namespace
}  // namespace cmf

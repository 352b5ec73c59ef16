#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "cmf/generator.hpp"
#include "cmf/io.hpp"

namespace cmf {
namespace {

constexpr std::string_view kTiny = "p max 2 1\nn 1 s\nn 2 t\na 1 2 5\n";

TEST(ParseDimacs, TwoVertexExample) {
  const FlowNetwork net = parse_dimacs(kTiny);
  EXPECT_EQ(net.vertex_count(), 2);
  ASSERT_EQ(net.arc_count(), 1);
  EXPECT_EQ(net.arc(0), (Arc{0, 1, 5}));
  EXPECT_EQ(net.source(), 0);
  EXPECT_EQ(net.sink(), 1);
}

TEST(ParseDimacs, CommentsBlankLinesAndCrlfAreIgnored) {
  const FlowNetwork net = parse_dimacs("c hello\r\n\r\np max 3 2\r\nc mid\nn 3 t\nn 1 s\na 1 2 4\na 2 3 1\n");
  EXPECT_EQ(net.source(), 0);
  EXPECT_EQ(net.sink(), 2);
  EXPECT_EQ(net.arc(1), (Arc{1, 2, 1}));
}

TEST(ParseDimacs, TooFewArcsReportsLastLine) {
  try {
    parse_dimacs("p max 2 2\nn 1 s\nn 2 t\na 1 2 5\n");
    FAIL() << "accepted a short file";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(ParseDimacs, NegativeCapacityReportsItsLine) {
  try {
    parse_dimacs("p max 2 1\nn 1 s\nn 2 t\na 1 2 -1\n");
    FAIL() << "accepted a negative capacity";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(WriteDimacs, RoundTripTiny) {
  const FlowNetwork net = parse_dimacs(kTiny);
  EXPECT_EQ(write_dimacs(net), kTiny);
  EXPECT_EQ(parse_dimacs(write_dimacs(net)), net);
}

TEST(WriteDimacs, RoundTripKeepsParallelAndAntiparallelArcs) {
  const FlowNetwork net(3, {{0, 1, 3}, {0, 1, 3}, {1, 0, 2}, {1, 2, 7}, {0, 1, 0}}, 0, 2);
  EXPECT_EQ(parse_dimacs(write_dimacs(net)), net);
}

TEST(WriteDimacs, RoundTripThousandArcInstance) {
  GeneratorSpec spec;
  spec.n = 400;
  spec.m = 1000;
  spec.max_capacity = 1024;
  spec.seed = 5;
  const FlowNetwork net = generate(spec);
  ASSERT_EQ(net.arc_count(), 1000);
  const FlowNetwork back = parse_dimacs(write_dimacs(net));
  EXPECT_EQ(back.arcs(), net.arcs());
  EXPECT_EQ(write_dimacs(back), write_dimacs(net));
}

// Each mutation breaks one stated constraint of a valid file.
TEST(ParseDimacs, RejectsEveryConstraintBreakingMutation) {
  const std::string base = "p max 4 3\nn 1 s\nn 4 t\na 1 2 5\na 2 3 6\na 3 4 7\n";
  ASSERT_NO_THROW(parse_dimacs(base));
  const std::vector<std::pair<std::string, std::string>> mutations = {
      {"p max 4 3\n", ""},
      {"p max 4 3\n", "p max 4 3\np max 4 3\n"},
      {"n 1 s\n", ""},
      {"n 4 t\n", ""},
      {"n 1 s\n", "n 1 s\nn 2 s\n"},
      {"n 4 t\n", "n 4 t\nn 3 t\n"},
      {"n 4 t\n", "n 1 t\n"},
      {"n 4 t\n", "n 4 x\n"},
      {"p max 4 3", "p max 4 4"},
      {"p max 4 3", "p max 4 2"},
      {"p max 4 3", "p min 4 3"},
      {"a 2 3 6", "a 2 3 -6"},
      {"a 2 3 6", "a 2 3 6 9"},
      {"a 2 3 6", "a 2 3 6x"},
      {"a 2 3 6", "a 2 5 6"},
      {"a 2 3 6", "a 0 3 6"},
      {"a 2 3 6", "a 2 2 6"},
      {"a 2 3 6", "a 2 3"},
      {"a 2 3 6", "x 2 3 6"},
      {"p max 4 3", "p max 4 3 junk"},
      {"p max 4 3", "p max 1 3"},
  };
  for (const auto& [from, to] : mutations) {
    std::string text = base;
    const auto at = text.find(from);
    ASSERT_NE(at, std::string::npos) << from;
    text.replace(at, from.size(), to);
    EXPECT_THROW(parse_dimacs(text), ParseError) << "mutation: " << from << " -> " << to;
  }
}

// Random byte edits either still parse to a valid network or throw
// ParseError; nothing else escapes.
TEST(ParseDimacs, RandomByteEditsNeverEscapeAsOtherErrors) {
  const std::string base = "p max 5 4\nn 1 s\nn 5 t\na 1 2 5\na 2 3 6\na 3 4 7\na 4 5 8\n";
  const std::string alphabet = "0123456789 -apnstcx\n";
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 3000; ++trial) {
    std::string text = base;
    const int edits = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int e = 0; e < edits; ++e) {
      const auto pos = std::uniform_int_distribution<std::size_t>(0, text.size() - 1)(rng);
      text[pos] = alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
    }
    try {
      const FlowNetwork net = parse_dimacs(text);
      EXPECT_EQ(parse_dimacs(write_dimacs(net)), net);
    } catch (const ParseError&) {
    }
  }
}

TEST(FlowFile, RoundTripAndMismatch) {
  const FlowNetwork net(3, {{0, 1, 4}, {1, 2, 3}}, 0, 2);
  const std::string text = write_flow_file(net, {3, 3});
  EXPECT_EQ(text, "f 1 2 3\nf 2 3 3\n");
  std::istringstream in(text);
  EXPECT_EQ(parse_flow_file(in, net), (std::vector<Capacity>{3, 3}));
  std::istringstream swapped("f 2 3 3\nf 1 2 3\n");
  EXPECT_THROW(parse_flow_file(swapped, net), ParseError);
  std::istringstream short_file("f 1 2 3\n");
  EXPECT_THROW(parse_flow_file(short_file, net), ParseError);
}

TEST(WriteStats, ContainsFlowValue) {
  StatsRecord r;
  r.flow_value = 6;
  EXPECT_NE(write_stats(r).find("flow_value=6"), std::string::npos);
}

TEST(WriteStats, ZeroRecordRendersZeros) {
  const std::string line = write_stats(StatsRecord{});
  for (std::string_view key : {"flow_value", "phases", "sat_pushes", "high_nonsat", "low_nonsat",
                               "relabels", "sum_vc", "dyntree_ops"}) {
    EXPECT_NE(line.find(std::string(key) + "=0 "), std::string::npos) << key;
  }
}

TEST(WriteStats, IdenticalRecordsIdenticalBytesAndFixedKeyOrder) {
  StatsRecord r;
  r.instance = "x.max";
  r.solver = "compact";
  r.flow_value = 11;
  r.relabels = 4;
  r.wall_ms = 1.25;
  EXPECT_EQ(write_stats(r), write_stats(r));
  const std::string line = write_stats(r);
  ASSERT_EQ(line.back(), '\n');
  std::istringstream in(line);
  std::string field;
  std::size_t i = 0;
  while (in >> field) {
    ASSERT_LT(i, std::size(kStatsKeys));
    EXPECT_EQ(field.substr(0, field.find('=')), kStatsKeys[i]);
    ++i;
  }
  EXPECT_EQ(i, std::size(kStatsKeys));
}

}  // namespace
}  // namespace cmf

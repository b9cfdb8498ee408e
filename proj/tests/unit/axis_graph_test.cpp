#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "cfpq/axis_graph.hpp"
#include "fixtures.hpp"
#include "random_instances.hpp"

namespace cfpq {
namespace {

bool has(const LabeledGraph& lg, const RdfGraph& g, const std::string& from,
         const std::string& label, const std::string& to) {
  auto parsed = parse_axis_label(label);
  if (!parsed) return false;
  auto id = lg.resolve(*parsed);
  return id && lg.has_edge(*g.find(from), *id, *g.find(to));
}

TEST(AxisLabel, ParsesAndRenders) {
  auto l = parse_axis_label("next-1::http://x/p");
  ASSERT_TRUE(l);
  EXPECT_EQ(l->axis, Axis::Next);
  EXPECT_TRUE(l->inverse);
  EXPECT_EQ(l->qualifier, "http://x/p");
  EXPECT_EQ(to_string(*l), "next-1::<http://x/p>");

  auto bracketed = parse_axis_label("edge::<http://x/a b>");
  ASSERT_TRUE(bracketed);
  EXPECT_EQ(bracketed->qualifier, "http://x/a b");
  EXPECT_EQ(to_string(*bracketed), "edge::<http://x/a b>");

  EXPECT_FALSE(parse_axis_label("nest::#0"));
  EXPECT_FALSE(parse_axis_label("sideways"));
  EXPECT_FALSE(parse_axis_label("next::"));
  EXPECT_EQ(to_string(nest_label(3)), "nest::#3");
}

TEST(Convert, SingleTripleGivesEighteenEdges) {
  RdfGraph g;
  g.add("a", "p", "b");
  LabeledGraph lg = convert(g);
  EXPECT_EQ(lg.node_count(), 3u);
  EXPECT_EQ(lg.edge_count(), 18u);

  for (const auto& [from, label, to] :
       std::vector<std::tuple<std::string, std::string, std::string>>{
           {"a", "next", "b"},       {"a", "next::p", "b"},
           {"b", "next-1", "a"},     {"b", "next-1::p", "a"},
           {"a", "edge", "p"},       {"a", "edge::b", "p"},
           {"p", "edge-1", "a"},     {"p", "edge-1::b", "a"},
           {"p", "node", "b"},       {"p", "node::a", "b"},
           {"b", "node-1", "p"},     {"b", "node-1::a", "p"},
           {"a", "self", "a"},       {"a", "self::a", "a"},
           {"p", "self::p", "p"},    {"b", "self::b", "b"}})
    EXPECT_TRUE(has(lg, g, from, label, to)) << from << " " << label << " " << to;
}

TEST(Convert, EmptyGraph) {
  LabeledGraph lg = convert(RdfGraph{});
  EXPECT_EQ(lg.node_count(), 0u);
  EXPECT_EQ(lg.edge_count(), 0u);
}

TEST(Convert, FullyReflexiveTripleDeduplicatesToFourteenLoops) {
  RdfGraph g;
  g.add("a", "a", "a");
  LabeledGraph lg = convert(g);
  EXPECT_EQ(lg.node_count(), 1u);
  EXPECT_EQ(lg.edge_count(), 14u);
}

TEST(Convert, EdgeCountBound) {
  testing::Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    RdfGraph g = testing::random_graph(rng, 8, 15);
    LabeledGraph lg = convert(g);
    EXPECT_LE(lg.edge_count(), 12 * g.size() + 2 * g.constant_count());
    EXPECT_EQ(lg.node_count(), g.constant_count());
  }
}

TEST(Convert, EqualityWhenNoLabelCollides) {
  RdfGraph g;
  g.add("a", "p", "b");
  g.add("c", "q", "d");
  EXPECT_EQ(convert(g).edge_count(), 12 * 2 + 2 * 6u);
}

TEST(Convert, InverseSymmetry) {
  testing::Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    RdfGraph g = testing::random_graph(rng, 6, 10);
    LabeledGraph lg = convert(g);
    for (const auto& e : lg.edges()) {
      EdgeLabel l = lg.label(e.label);
      if (l.axis == Axis::Self) {
        EXPECT_FALSE(l.inverse);
        EXPECT_EQ(e.source, e.target);
        continue;
      }
      EdgeLabel mirror = l;
      mirror.inverse = !l.inverse;
      auto id = lg.find_label(mirror);
      ASSERT_TRUE(id);
      EXPECT_TRUE(lg.has_edge(e.target, *id, e.source));
    }
  }
}

TEST(Convert, CoOccurringConstantsAreConnectedBothWays) {
  testing::Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    RdfGraph g = testing::random_graph(rng, 6, 10);
    LabeledGraph lg = convert(g);
    auto linked = [&](ConstantId x, ConstantId y) {
      for (const auto& [label, to] : lg.outgoing(x))
        if (to == y) return true;
      return false;
    };
    for (const Triple& t : g.triples()) {
      const ConstantId c[] = {t.s, t.p, t.o};
      for (ConstantId x : c)
        for (ConstantId y : c) EXPECT_TRUE(linked(x, y));
    }
  }
}

TEST(Convert, AdjacencyIndexesAgree) {
  RdfGraph g = testing::bio_graph();
  LabeledGraph lg = convert(g);
  std::size_t out_total = 0, in_total = 0;
  for (std::uint32_t n = 0; n < lg.node_count(); ++n) {
    out_total += lg.outgoing(constant_at(n)).size();
    in_total += lg.incoming(constant_at(n)).size();
    for (const auto& [label, to] : lg.outgoing(constant_at(n)))
      EXPECT_TRUE(lg.has_edge(constant_at(n), label, to));
  }
  EXPECT_EQ(out_total, lg.edge_count());
  EXPECT_EQ(in_total, lg.edge_count());
  std::size_t by_label = 0;
  for (std::uint32_t l = 0; l < lg.label_count(); ++l)
    by_label += lg.edges_with_label(LabelId{l}).size();
  EXPECT_EQ(by_label, lg.edge_count());
}

TEST(Convert, ResolveUnknownQualifierGivesNothing) {
  RdfGraph g;
  g.add("a", "p", "b");
  LabeledGraph lg = convert(g);
  EXPECT_FALSE(lg.resolve(*parse_axis_label("next::zzz")));
  EXPECT_TRUE(lg.resolve(*parse_axis_label("next::p")));
  EXPECT_FALSE(lg.resolve(nest_label(0)));
}

TEST(Convert, TsvDumpIsSortedAndComplete) {
  RdfGraph g;
  g.add("a", "p", "b");
  std::ostringstream out;
  write_labeled_graph(out, convert(g));
  std::istringstream in(out.str());
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  EXPECT_EQ(lines.size(), 18u);
  EXPECT_TRUE(std::is_sorted(lines.begin(), lines.end()));
  EXPECT_NE(out.str().find("a\tnext::p\tb"), std::string::npos);
}

}  // namespace
}  // namespace cfpq

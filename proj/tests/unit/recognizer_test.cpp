#include <gtest/gtest.h>

#include "cfpq/bench.hpp"
#include "cfpq/oracle.hpp"
#include "cfpq/recognizer.hpp"
#include "fixtures.hpp"
#include "random_instances.hpp"

namespace cfpq {
namespace {

using testing::bio_pairs;
using testing::to_set;

PairSet solve_pairs(const RdfGraph& g, const Cfg& cfg, const std::string& v,
                    const SolveOptions& options = {}) {
  return to_set(relation_of(solve(convert(g), normalize(cfg), options), v));
}

TEST(Solve, EmptyGraphGivesEmptyRelation) {
  Cfg g = parse_grammar("V -> eps | next V\n");
  CfRelation r = solve(convert(RdfGraph{}), normalize(g));
  EXPECT_EQ(r.size(), 0u);
}

TEST(Solve, EpsilonRuleGivesDiagonal) {
  testing::Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    RdfGraph g = testing::random_graph(rng, 8, 12);
    PairSet expected;
    for (ConstantId c : vocabulary(g)) expected.emplace(c, c);
    EXPECT_EQ(solve_pairs(g, parse_grammar("V -> eps\n"), "V"), expected);
  }
}

TEST(Solve, SimilarityOnBiomedicalGraph) {
  RdfGraph g = testing::bio_graph();
  Cfg cfg = load_grammar(testing::data_path("similarity.cfg"));
  PairSet v = solve_pairs(g, cfg, "V");
  EXPECT_TRUE(v.contains(*bio_pairs(g, {{"Gene_B", "Gene_C"}}).begin()));

  // The formal semantics also yields reflexive pairs and Gene_S, whose locus
  // is linked to the same phenotype.
  PairSet expected = bio_pairs(
      g, {{"Gene_B", "Gene_B"}, {"Gene_B", "Gene_C"}, {"Gene_B", "Gene_S"},
          {"Gene_C", "Gene_B"}, {"Gene_C", "Gene_C"}, {"Gene_C", "Gene_S"},
          {"Gene_S", "Gene_B"}, {"Gene_S", "Gene_C"}, {"Gene_S", "Gene_S"}});
  EXPECT_EQ(v, expected);
  EXPECT_EQ(v, oracle_relation(g, cfg, *cfg.find_nonterminal("V"), 6));
}

TEST(Solve, UnknownNonterminalGivesEmptySet) {
  RdfGraph g = testing::bio_graph();
  CfRelation r = solve(convert(g), normalize(parse_grammar("V -> eps\n")));
  EXPECT_TRUE(relation_of(r, "Nope").empty());
  EXPECT_TRUE(relation_of(r, 99).empty());
}

TEST(Solve, SameLayerOnShortChain) {
  RdfGraph g;
  const std::string sc(kSubClassOfIri);
  g.add("a", sc, "b");
  g.add("b", sc, "c");
  Cfg q1 = hierarchy_q1();
  PairSet s = solve_pairs(g, q1, "S");
  EXPECT_EQ(s, oracle_relation(g, q1, 0, 8));
  // Same layer: every constant with itself, nothing else on a single chain.
  PairSet diagonal;
  for (ConstantId c : vocabulary(g)) diagonal.emplace(c, c);
  EXPECT_EQ(s, diagonal);
}

TEST(Solve, ClassesMeetingAtTheSameDepthAreRelated) {
  RdfGraph g;
  const std::string sc(kSubClassOfIri);
  g.add("a", sc, "top");
  g.add("b", sc, "top");
  g.add("d", sc, "a");
  g.add("d", sc, "b");
  g.add("e", sc, "d");
  Cfg q1 = hierarchy_q1();
  PairSet s = solve_pairs(g, q1, "S");
  EXPECT_TRUE(s.contains({*g.find("a"), *g.find("b")}));
  EXPECT_TRUE(s.contains({*g.find("b"), *g.find("a")}));
  EXPECT_FALSE(s.contains({*g.find("top"), *g.find("a")}));
  EXPECT_FALSE(s.contains({*g.find("a"), *g.find("d")}));
  EXPECT_EQ(s, oracle_relation(g, q1, 0, 8));
}

TEST(Solve, NextOnlyMatchesBareEdges) {
  RdfGraph g;
  g.add("a", "p", "b");
  EXPECT_EQ(solve_pairs(g, parse_grammar("V -> next\n"), "V").size(), 1u);
  EXPECT_EQ(solve_pairs(g, parse_grammar("V -> next::p\n"), "V").size(), 1u);
  EXPECT_TRUE(solve_pairs(g, parse_grammar("V -> next::q\n"), "V").empty());
}

TEST(Solve, OracleIsASoundSubset) {
  testing::Rng rng(77);
  for (int i = 0; i < 60; ++i) {
    RdfGraph g = testing::random_graph(rng, 5, 6);
    auto labels = testing::all_labels(g);
    Cfg cfg = testing::random_grammar(rng, labels, 3, 6);
    LabeledGraph lg = convert(g);
    CfRelation r = solve(lg, normalize(cfg));
    for (NonterminalIndex v = 0; v < cfg.nonterminal_count(); ++v) {
      PairSet full = to_set(relation_of(r, v));
      PairSet bounded = oracle_relation(lg, cfg, v, 3);
      for (const auto& p : bounded) EXPECT_TRUE(full.contains(p));
    }
  }
}

TEST(Solve, ForwardInstancesMatchTheOracle) {
  testing::Rng rng(2024);
  for (int i = 0; i < 50; ++i) {
    RdfGraph g = testing::random_forward_graph(rng, 8, 15);
    Cfg cfg = testing::random_grammar(rng, testing::forward_labels(g), 4, 8);
    LabeledGraph lg = convert(g);
    CfRelation r = solve(lg, normalize(cfg));
    for (NonterminalIndex v = 0; v < cfg.nonterminal_count(); ++v) {
      auto stable = stabilized_oracle_relation(lg, cfg, v, 10);
      ASSERT_TRUE(stable);
      EXPECT_EQ(to_set(relation_of(r, v)), stable->pairs) << cfg.to_string();
    }
  }
}

TEST(Solve, MonotoneUnderAddedTriples) {
  testing::Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    RdfGraph g = testing::random_graph(rng, 6, 8);
    Cfg cfg = testing::random_grammar(rng, testing::all_labels(g), 3, 6);
    CfRelation before = solve(convert(g), normalize(cfg));
    RdfGraph bigger = g;
    RdfGraph extra = testing::random_graph(rng, 6, 3);
    for (const Triple& t : extra.triples())
      bigger.add(extra.lexical(t.s), extra.lexical(t.p), extra.lexical(t.o));
    CfRelation after = solve(convert(bigger), normalize(cfg));
    for (const Fact& f : before.facts()) {
      auto a = bigger.find(g.lexical(f.source));
      auto b = bigger.find(g.lexical(f.target));
      ASSERT_TRUE(a && b);
      EXPECT_TRUE(after.contains(f.nonterminal, *a, *b));
    }
  }
}

TEST(Solve, FactBoundAndOrderIndependence) {
  testing::Rng rng(99);
  for (int i = 0; i < 40; ++i) {
    RdfGraph g = testing::random_graph(rng, 8, 12);
    Cfg cfg = testing::random_grammar(rng, testing::all_labels(g), 4, 8);
    LabeledGraph lg = convert(g);
    NormCfg n = normalize(cfg);
    CfRelation base = solve(lg, n);
    const std::size_t voc = g.constant_count();
    EXPECT_LE(base.size(), n.nonterminal_count() * voc * voc);
    EXPECT_EQ(base.stats().fact_bound, n.nonterminal_count() * voc * voc);
    EXPECT_EQ(base.stats().facts, base.size());
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      SolveOptions options;
      options.shuffle_seed = seed;
      EXPECT_EQ(solve(lg, n, options).facts(), base.facts());
    }
  }
}

TEST(Solve, IndexesAreConsistent) {
  RdfGraph g = testing::bio_graph();
  Cfg cfg = load_grammar(testing::data_path("similarity.cfg"));
  CfRelation r = solve(convert(g), normalize(cfg));
  std::size_t via_sources = 0;
  for (NonterminalIndex v = 0; v < r.nonterminal_count(); ++v)
    for (std::uint32_t b = 0; b < r.node_count(); ++b)
      for (ConstantId a : r.sources_of(v, constant_at(b))) {
        EXPECT_TRUE(r.contains(v, a, constant_at(b)));
        const auto& t = r.targets_of(v, a);
        EXPECT_NE(std::find(t.begin(), t.end(), constant_at(b)), t.end());
        ++via_sources;
      }
  EXPECT_EQ(via_sources, r.size());
  auto facts = r.facts();
  EXPECT_TRUE(std::is_sorted(facts.begin(), facts.end()));
}

TEST(Solve, ProbesStayPolynomialOnChains) {
  Cfg q1 = hierarchy_q1();
  std::vector<std::size_t> probes;
  for (std::size_t n : {16u, 32u, 64u}) {
    RdfGraph g;
    for (std::size_t i = 0; i < n; ++i)
      g.add("c" + std::to_string(i + 1), std::string(kSubClassOfIri),
            "c" + std::to_string(i));
    probes.push_back(solve(convert(g), normalize(q1)).stats().join_probes);
  }
  EXPECT_LE(probes[1], 16 * probes[0]);
  EXPECT_LE(probes[2], 16 * probes[1]);
}

}  // namespace
}  // namespace cfpq

#include <gtest/gtest.h>

#include "cfpq/error.hpp"
#include "cfpq/grammar.hpp"
#include "cfpq/oracle.hpp"
#include "random_instances.hpp"

namespace cfpq {
namespace {

// V -> a b | a V b with a = next::a, b = next::b.
const char* kAnBn = "V -> next::a next::b | next::a V next::b\n";

Word word_of(const Cfg& g, std::initializer_list<const char*> tokens) {
  Word w;
  for (const char* t : tokens) w.push_back(*g.find_terminal(*parse_axis_label(t)));
  return w;
}

std::size_t body_measure(const Cfg& g) {
  std::size_t total = 0;
  for (const Rule& r : g.rules()) total += std::max<std::size_t>(1, r.body.size());
  return total;
}

TEST(ParseGrammar, RecursiveRuleWithEpsilon) {
  Cfg g = parse_grammar("V -> next::a V next-1::a | eps\n");
  EXPECT_EQ(g.rules().size(), 2u);
  EXPECT_EQ(g.nonterminal_count(), 1u);
  EXPECT_EQ(g.terminal_count(), 2u);
  EXPECT_TRUE(g.find_terminal(*parse_axis_label("next::a")));
  EXPECT_TRUE(g.find_terminal(*parse_axis_label("next-1::a")));
}

TEST(ParseGrammar, UndefinedNonterminalsAreLegal) {
  Cfg g = parse_grammar("S -> A B\n");
  EXPECT_EQ(g.nonterminal_count(), 3u);
  EXPECT_EQ(g.rules().size(), 1u);
  EXPECT_TRUE(generate_strings(g, *g.find_nonterminal("S"), 6).empty());
}

TEST(ParseGrammar, CommentsBlankLinesAndRepeatedHeads) {
  Cfg g = parse_grammar(
      "# similarity\n\n"
      "V -> next::<http://x/p#q> U   # trailing comment\n"
      "V -> eps\n"
      "U -> self\n");
  EXPECT_EQ(g.rules().size(), 3u);
  auto t = g.find_terminal(*parse_axis_label("next::http://x/p#q"));
  EXPECT_TRUE(t);
}

TEST(ParseGrammar, DuplicateRulesCollapse) {
  Cfg g = parse_grammar("V -> next | next\nV -> next\n");
  EXPECT_EQ(g.rules().size(), 1u);
}

TEST(ParseGrammar, RoundTripsThroughText) {
  testing::Rng rng(17);
  std::vector<AxisLabel> terms = {*parse_axis_label("next::a"),
                                  *parse_axis_label("edge-1"),
                                  *parse_axis_label("self::<x y>")};
  for (int i = 0; i < 50; ++i) {
    Cfg g = testing::random_grammar(rng, terms, 4, 8);
    Cfg back = parse_grammar(g.to_string());
    for (NonterminalIndex v = 0; v < g.nonterminal_count(); ++v) {
      auto w = back.find_nonterminal(g.nonterminal_name(v));
      if (!w) {
        // A nonterminal with no rules that is never referenced disappears.
        EXPECT_TRUE(generate_strings(g, v, 4).empty());
        continue;
      }
      std::set<std::string> a, b;
      for (const Word& x : generate_strings(g, v, 4)) a.insert(g.render(x));
      for (const Word& x : generate_strings(back, *w, 4)) b.insert(back.render(x));
      EXPECT_EQ(a, b);
    }
  }
}

struct BadGrammar {
  const char* text;
  std::size_t line;
  std::size_t column;
  const char* fragment;
};

class GrammarErrors : public ::testing::TestWithParam<BadGrammar> {};

TEST_P(GrammarErrors, ReportsPosition) {
  const BadGrammar& bad = GetParam();
  try {
    parse_grammar(bad.text);
    FAIL() << "accepted: " << bad.text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), bad.line) << e.what();
    EXPECT_EQ(e.column(), bad.column) << e.what();
    EXPECT_NE(e.message().find(bad.fragment), std::string::npos) << e.what();
  }
}

INSTANTIATE_TEST_SUITE_P(
    Malformed, GrammarErrors,
    ::testing::Values(
        BadGrammar{"v -> next\n", 1, 1, "not a nonterminal"},
        BadGrammar{"V next\n", 1, 3, "expected '->'"},
        BadGrammar{"V -> next |\n", 1, 11, "empty alternative"},
        BadGrammar{"V -> eps next\n", 1, 10, "'eps' must be the only"},
        BadGrammar{"# ok\nV -> nest::#0\n", 2, 6, "reserved"},
        BadGrammar{"V -> up::a\n", 1, 6, "unknown axis"},
        BadGrammar{"V -> foo\n", 1, 6, "neither an axis terminal"}));

TEST(Normalize, TwoTerminalBody) {
  Cfg g = parse_grammar("V -> next::a next::b\n");
  NormCfg n = normalize(g);
  const Cfg& ng = n.grammar();
  EXPECT_EQ(ng.rules().size(), 3u);
  ASSERT_EQ(n.binary_rules().size(), 1u);
  const auto& r = n.binary_rules()[0];
  EXPECT_EQ(r.head, *ng.find_nonterminal("V"));
  EXPECT_NE(r.left, r.right);
  for (TerminalIndex t = 0; t < ng.terminal_count(); ++t)
    EXPECT_EQ(n.heads_of_terminal(t).size(), 1u);
  EXPECT_EQ(n.heads_of_terminal(0)[0], r.left);
  EXPECT_EQ(n.heads_of_terminal(1)[0], r.right);
}

TEST(Normalize, UnitClosure) {
  Cfg g = parse_grammar("V -> U\nU -> next::a\n");
  NormCfg n = normalize(g);
  EXPECT_EQ(n.grammar().rules().size(), 2u);
  ASSERT_EQ(n.heads_of_terminal(0).size(), 2u);
  EXPECT_TRUE(n.binary_rules().empty());
}

TEST(Normalize, OutputIsInNormForm) {
  testing::Rng rng(4);
  std::vector<AxisLabel> terms = {*parse_axis_label("next::a"),
                                  *parse_axis_label("next::b"),
                                  *parse_axis_label("node-1")};
  for (int i = 0; i < 200; ++i) {
    Cfg g = testing::random_grammar(rng, terms, 4, 8);
    NormCfg n = normalize(g);
    for (const Rule& r : n.grammar().rules()) EXPECT_TRUE(is_norm_form(r));
    EXPECT_LE(n.grammar().rules().size(), 4 * body_measure(g));
    EXPECT_EQ(n.source_digest(), g.digest());
    for (NonterminalIndex v = 0; v < g.nonterminal_count(); ++v)
      EXPECT_EQ(n.grammar().nonterminal_name(v), g.nonterminal_name(v));
  }
}

TEST(Normalize, AdoptRejectsLongBodies) {
  Cfg g = parse_grammar("V -> next next next\n");
  EXPECT_THROW(NormCfg::adopt(g), ContractError);
  Cfg ok = parse_grammar("V -> A B | next | eps\n");
  EXPECT_NO_THROW(NormCfg::adopt(ok));
}

TEST(Normalize, AnBnKeepsItsLanguage) {
  Cfg g = parse_grammar(kAnBn);
  NormCfg n = normalize(g);
  std::set<Word> expected = {word_of(g, {"next::a", "next::b"}),
                             word_of(g, {"next::a", "next::a", "next::b", "next::b"}),
                             word_of(g, {"next::a", "next::a", "next::a", "next::b",
                                         "next::b", "next::b"})};
  EXPECT_EQ(generate_strings(n.grammar(), 0, 6), expected);
}

TEST(GenerateStrings, AnBnUpToSix) {
  Cfg g = parse_grammar(kAnBn);
  auto words = generate_strings(g, 0, 6);
  std::set<std::string> rendered;
  for (const Word& w : words) rendered.insert(g.render(w));
  EXPECT_EQ(rendered,
            (std::set<std::string>{
                "next::a next::b", "next::a next::a next::b next::b",
                "next::a next::a next::a next::b next::b next::b"}));
}

TEST(GenerateStrings, EpsilonOnly) {
  Cfg g = parse_grammar("V -> eps\n");
  EXPECT_EQ(generate_strings(g, 0, 0), (std::set<Word>{Word{}}));
}

TEST(GenerateStrings, NullableRecursionTerminates) {
  Cfg g = parse_grammar("V -> V V | next | eps\n");
  auto words = generate_strings(g, 0, 3);
  EXPECT_EQ(words.size(), 4u);  // eps, a, aa, aaa
}

TEST(GenerateStrings, AgreesWithCyk) {
  testing::Rng rng(8);
  std::vector<AxisLabel> terms = {*parse_axis_label("next::a"),
                                  *parse_axis_label("next::b")};
  for (int i = 0; i < 100; ++i) {
    Cfg g = testing::random_grammar(rng, terms, 4, 8);
    NormCfg n = normalize(g);
    // All words over the grammar's own terminals up to length 5.
    std::vector<Word> all = {Word{}};
    for (std::size_t len = 1, begin = 0; len <= 5; ++len) {
      std::size_t end = all.size();
      for (std::size_t k = begin; k < end; ++k)
        for (TerminalIndex t = 0; t < g.terminal_count(); ++t) {
          Word w = all[k];
          w.push_back(t);
          all.push_back(std::move(w));
        }
      begin = end;
    }
    for (NonterminalIndex v = 0; v < g.nonterminal_count(); ++v) {
      auto lang = generate_strings(g, v, 5);
      for (const Word& w : all)
        EXPECT_EQ(lang.contains(w), cyk_membership(n, v, w))
            << g.to_string() << " word " << g.render(w);
    }
  }
}

TEST(Nullable, Basic) {
  Cfg g = parse_grammar("A -> B C\nB -> eps\nC -> B | next\nD -> next\n");
  auto nullable = nullable_nonterminals(g);
  EXPECT_TRUE(nullable[*g.find_nonterminal("A")]);
  EXPECT_TRUE(nullable[*g.find_nonterminal("B")]);
  EXPECT_TRUE(nullable[*g.find_nonterminal("C")]);
  EXPECT_FALSE(nullable[*g.find_nonterminal("D")]);
}

TEST(Cfg, DigestIsOrderIndependent) {
  Cfg a = parse_grammar("V -> next | eps\n");
  Cfg b = parse_grammar("V -> eps | next\n");
  EXPECT_EQ(a.digest(), b.digest());
  Cfg c = parse_grammar("V -> next-1 | eps\n");
  EXPECT_NE(a.digest(), c.digest());
}

TEST(Cfg, AddRuleRejectsOutOfRange) {
  Cfg g;
  g.add_nonterminal("V");
  EXPECT_THROW(g.add_rule(Rule{1, {}}), ContractError);
  EXPECT_THROW(g.add_rule(Rule{0, {Symbol::terminal(0)}}), ContractError);
}

}  // namespace
}  // namespace cfpq

#include <gtest/gtest.h>

#include "grammar_forge/grammar.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace grammar_forge;
using gf_test::ReadFixture;

TEST(ParseGrammar, NodeStmtLinesAndAttributes) {
  Grammar g = ParseGrammar(ReadFixture("dot_nodestmt.xtext"));
  ASSERT_EQ(g.rules.size(), 1u);
  const GrammarRule& r = g.rules[0];
  EXPECT_EQ(r.name, "NodeStmt");
  EXPECT_EQ(r.returns_type, "NodeStmt");
  ASSERT_EQ(r.lines.size(), 7u);
  EXPECT_EQ(r.lines[4].attr_name, "node");
  EXPECT_EQ(r.lines[5].attr_name, "attrLists");
  for (std::size_t i : {0u, 1u, 2u, 3u, 6u}) EXPECT_FALSE(r.lines[i].attr_name) << i;
  ASSERT_EQ(g.imports.size(), 1u);
  EXPECT_EQ(g.imports[0].uri, "http://www.example.org/dot");
}

TEST(ParseGrammar, ActionOnlyBodyHasNoAttributes) {
  Grammar g = ParseGrammar("X: {X} ;\n");
  ASSERT_EQ(g.rules.size(), 1u);
  EXPECT_EQ(g.rules[0].name, "X");
  for (const auto& l : g.rules[0].lines) EXPECT_FALSE(l.attr_name);
}

TEST(ParseGrammar, ActionAssignmentIsNotAnAttribute) {
  Grammar g = ParseGrammar("X: A ({B.left=current} op='+' right=A)*;\n");
  EXPECT_EQ(g.rules[0].lines[0].attr_name, "op");
}

TEST(ParseGrammar, PreservesRuleOrder) {
  Grammar g = ParseGrammar("A: 'a';\nC: 'c';\nB: 'b';\n");
  ASSERT_EQ(g.rules.size(), 3u);
  EXPECT_EQ(g.rules[0].name, "A");
  EXPECT_EQ(g.rules[1].name, "C");
  EXPECT_EQ(g.rules[2].name, "B");
}

TEST(ParseGrammar, KindsAndSplitHeader) {
  Grammar g = ParseGrammar(ReadFixture("misc.xtext"));
  ASSERT_NE(g.FindRule("Element"), nullptr);
  EXPECT_EQ(g.FindRule("Element")->returns_type, "misc::Element");
  EXPECT_EQ(g.FindRule("Element")->HeaderLineCount(), 2u);
  EXPECT_EQ(g.FindRule("Visibility")->kind, RuleKind::kEnum);
  EXPECT_EQ(g.FindRule("DIGIT")->kind, RuleKind::kFragment);
  EXPECT_EQ(g.FindRule("HEX")->kind, RuleKind::kTerminal);
  EXPECT_EQ(g.imports.size(), 2u);
  EXPECT_EQ(g.imports[0].alias, "misc");
}

TEST(ParseGrammar, Errors) {
  EXPECT_THROW(ParseGrammar("A: 'a'\n"), ParseError);            // unterminated
  EXPECT_THROW(ParseGrammar("A: 'a';\nA: 'b';\n"), ParseError);  // duplicate name
  EXPECT_THROW(ParseGrammar("9A: 'a';\n"), ParseError);          // bad name
  EXPECT_THROW(ParseGrammar("A: ('a';\n"), ParseError);          // unbalanced
  EXPECT_THROW(ParseGrammar("A: 'a' () ;\n"), ParseError);       // empty group
  try {
    ParseGrammar("grammar x.Y\n\nA: 'a';\nB returns : 'b';\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4);
  }
}

TEST(SerializeGrammar, RoundTripsCorpus) {
  for (const auto& [name, text] : gf_test::Corpus()) {
    EXPECT_EQ(SerializeGrammar(ParseGrammar(text)), NormalizeNewlines(text)) << name;
  }
}

TEST(SerializeGrammar, CrLfInputNormalizes) {
  std::string crlf = "grammar a.B\r\n\r\nA:\r\n\t'a';\r\n";
  EXPECT_EQ(SerializeGrammar(ParseGrammar(crlf)), "grammar a.B\n\nA:\n\t'a';\n");
}

TEST(SerializeGrammar, DropsBlankLinesAndEndsWithOneNewline) {
  Grammar g = ParseGrammar("A:\n  'a'\n  'b';\n");
  g.rules[0].lines[1].SetContent("   ");
  EXPECT_EQ(SerializeGrammar(g), "A:\n  'b';\n");
}

TEST(SerializeGrammar, ZeroRules) {
  Grammar g = ParseGrammar("grammar a.B\n\nimport \"u\"\n");
  EXPECT_TRUE(g.rules.empty());
  EXPECT_EQ(SerializeGrammar(g), "grammar a.B\n\nimport \"u\"\n");
  EXPECT_EQ(SerializeGrammar(Grammar{}), "");
}

TEST(SerializeGrammar, OptimizedNodeStmtMatchesGoldenModuloBlankLines) {
  std::string golden = ReadFixture("dot_nodestmt_optimized.xtext");
  Grammar g = ParseGrammar(golden);
  EXPECT_EQ(gf_test::oracle::NormalizedLines(SerializeGrammar(g)),
            gf_test::oracle::NormalizedLines(golden));
}

TEST(AttributeDetection, AgreesWithRegexOracle) {
  for (const auto& [name, text] : gf_test::Corpus()) {
    Grammar g = ParseGrammar(text);
    auto rule_texts = gf_test::oracle::RuleTexts(text);
    ASSERT_EQ(rule_texts.size(), g.rules.size()) << name;
    for (std::size_t r = 0; r < g.rules.size(); ++r) {
      auto lines = gf_test::oracle::Lines(rule_texts[r]);
      std::vector<std::string> nonblank;
      for (auto& l : lines) {
        if (l.find_first_not_of(" \t") != std::string::npos) nonblank.push_back(l);
      }
      ASSERT_EQ(nonblank.size(), g.rules[r].lines.size()) << g.rules[r].name;
      for (std::size_t i = 0; i < nonblank.size(); ++i) {
        const auto& entry = g.rules[r].lines[i];
        std::string attr = entry.attr_name.value_or("");
        auto hits = gf_test::oracle::AttributeLines(nonblank[i] + "\n",
                                                    attr.empty() ? "\x01" : attr);
        if (entry.attr_name) {
          EXPECT_EQ(hits.size(), 1u) << g.rules[r].name << ": " << nonblank[i];
        } else {
          EXPECT_EQ(entry.content.find('='), std::string::npos)
              << g.rules[r].name << ": " << nonblank[i];
        }
      }
    }
  }
}

#include <gtest/gtest.h>

#include "grammar_forge/scope.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace grammar_forge;

namespace {

ScopeSpec Rule(std::string r) { return ScopeSpec{std::move(r), std::nullopt, {}}; }
ScopeSpec Attr(std::string r, std::string a) {
  return ScopeSpec{std::move(r), std::move(a), {}};
}

}  // namespace

TEST(ScopeSpec, KindsAndValidity) {
  EXPECT_EQ(ScopeSpec{}.Kind(), ScopeKind::kGlobal);
  EXPECT_EQ(Rule("A").Kind(), ScopeKind::kRule);
  EXPECT_EQ(Attr("A", "b").Kind(), ScopeKind::kAttribute);
  EXPECT_FALSE(ScopeSpec{}.Problem());
  EXPECT_TRUE((ScopeSpec{std::nullopt, "b", {}}.Problem()));
  EXPECT_TRUE((ScopeSpec{"A", "b", {"c"}}.Problem()));
  EXPECT_FALSE((ScopeSpec{"A", std::nullopt, {"c"}}.Problem()));
}

TEST(ResolveScope, RuleScopeReturnsAllLines) {
  Grammar g = ParseGrammar(gf_test::ReadFixture("dot_nodestmt.xtext"));
  auto r = ResolveScope(g, Rule("NodeStmt"));
  ASSERT_TRUE(r.Found());
  ASSERT_EQ(r.rules.size(), 1u);
  EXPECT_EQ(r.rules[0].lines, (std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6}));
}

TEST(ResolveScope, GlobalReturnsEveryRule) {
  Grammar g = ParseGrammar("A: 'a';\nB: 'b';\nC: 'c';\n");
  auto r = ResolveScope(g, ScopeSpec{});
  ASSERT_EQ(r.rules.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(r.rules[i].rule_index, i);
}

TEST(ResolveScope, AttributeScopeMatchesRegexFilter) {
  const std::string text = gf_test::ReadFixture("dot_nodestmt.xtext");
  Grammar g = ParseGrammar(text);
  auto r = ResolveScope(g, Attr("NodeStmt", "attrLists"));
  ASSERT_TRUE(r.Found());
  auto expected = gf_test::oracle::AttributeLines(gf_test::oracle::RuleTexts(text)[0],
                                                  "attrLists");
  EXPECT_EQ(r.rules[0].lines, expected);
  EXPECT_EQ(expected, (std::vector<std::size_t>{5}));
}

TEST(ResolveScope, ExclusionsDropRulesAndAttributeLines) {
  Grammar g = ParseGrammar(gf_test::ReadFixture("dot_generated.xtext"));
  ScopeSpec s;
  s.exclusions = {"NodeStmt", "attrLists"};
  auto r = ResolveScope(g, s);
  EXPECT_EQ(r.rules.size(), g.rules.size() - 1);
  for (const auto& sr : r.rules) {
    EXPECT_NE(g.rules[sr.rule_index].name, "NodeStmt");
    for (auto li : sr.lines) {
      EXPECT_NE(g.rules[sr.rule_index].lines[li].attr_name, "attrLists");
    }
  }
  ScopeSpec rs = Rule("EdgeStmtNode");
  rs.exclusions = {"node"};
  auto rr = ResolveScope(g, rs);
  EXPECT_EQ(rr.rules[0].lines.size(), g.FindRule("EdgeStmtNode")->lines.size() - 1);
}

TEST(ResolveScope, UnknownNamesAreReportedNotThrown) {
  Grammar g = ParseGrammar(gf_test::ReadFixture("dot_nodestmt.xtext"));
  EXPECT_FALSE(ResolveScope(g, Rule("Nope")).Found());
  EXPECT_FALSE(ResolveScope(g, Attr("NodeStmt", "nope")).Found());
}

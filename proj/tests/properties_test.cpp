#include <gtest/gtest.h>

#include <chrono>
#include <iostream>

#include "support/properties.hpp"

using namespace grammar_forge;
namespace props = gf_test::props;

namespace {

std::string Join(const props::Failures& f) {
  std::string out;
  for (std::size_t i = 0; i < f.size() && i < 10; ++i) out += f[i] + "\n";
  return out;
}

}  // namespace

TEST(Properties, RoundTrip) {
  auto f = props::RoundTrip();
  EXPECT_TRUE(f.empty()) << Join(f);
}

TEST(Properties, RandomSequencesStayParseable) {
  auto start = std::chrono::steady_clock::now();
  props::ValidityStats stats;
  auto f = props::Validity(1000, 20, 20261015, &stats);
  auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_TRUE(f.empty()) << Join(f);
  // plenty of draws must actually change the grammar for the check to mean much
  EXPECT_GT(stats.applied, 2000u);
  std::cout << "applied " << stats.applied << ", no-match " << stats.no_match << ", error "
            << stats.error << "\n";
  EXPECT_LT(secs, 60.0);
}

TEST(Properties, ValidityWithOtherSeeds) {
  for (unsigned seed : {1u, 2u, 3u}) {
    auto f = props::Validity(150, 20, seed);
    EXPECT_TRUE(f.empty()) << "seed " << seed << "\n" << Join(f);
  }
}

TEST(Properties, RemovalsAreIdempotent) {
  auto f = props::Idempotence();
  EXPECT_TRUE(f.empty()) << Join(f);
}

TEST(Properties, RenameToSameKeywordIsIdentity) {
  for (const auto& [name, text] : gf_test::Corpus()) {
    Grammar g = ParseGrammar(text);
    for (const char* kw : {"{", "node", "NodeStmt", "import"}) {
      Grammar copy = g;
      auto o = ApplyOne(copy, {"renameKeyword", {}, {kw, kw}}, props::Cat());
      EXPECT_NE(o.status, OutcomeStatus::kApplied) << name;
      EXPECT_EQ(copy, g) << name;
    }
  }
}

TEST(Properties, LastWriteWins) {
  auto f = props::LastWriteWins();
  EXPECT_TRUE(f.empty()) << Join(f);
}

TEST(Properties, ScopeMonotonicity) {
  auto f = props::ScopeMonotonicity();
  EXPECT_TRUE(f.empty()) << Join(f);
}

TEST(Properties, EmptyDiffExactlyWhenNothingApplied) {
  gf_test::RandomApps gen(props::Cat(), 99);
  for (const auto& [name, text] : gf_test::Corpus()) {
    if (name == "synthetic-120") continue;
    Grammar g = ParseGrammar(text);
    for (int k = 0; k < 60; ++k) {
      RuleApplication app = gen.Next(g);
      Grammar after = g;
      auto o = ApplyOne(after, app, props::Cat());
      bool empty = DiffGrammars(g, after).Empty();
      bool renamed = o.status == OutcomeStatus::kApplied && app.catalog_rule == "renameRule";
      if (!renamed) {
        EXPECT_EQ(empty, o.status != OutcomeStatus::kApplied)
            << name << ": " << FormatApplication(app) << " -> " << ToString(o.status);
      }
    }
  }
}

TEST(Properties, Deterministic) {
  Catalog cat = MakeDefaultCatalog();
  for (const auto& [g, c] : std::vector<std::pair<const char*, const char*>>{
           {"dot_generated.xtext", "dot_generated.gro"}, {"eastadl.xtext", "eastadl.gro"}}) {
    auto apps = ParseConfig(gf_test::ReadFixture(c), cat).applications;
    Grammar in = ParseGrammar(gf_test::ReadFixture(g));
    auto a = ApplyAll(in, apps, false, cat);
    auto b = ApplyAll(in, apps, false, cat);
    EXPECT_EQ(SerializeGrammar(a.grammar), SerializeGrammar(b.grammar));
    ASSERT_EQ(a.report.outcomes.size(), b.report.outcomes.size());
    for (std::size_t i = 0; i < a.report.outcomes.size(); ++i) {
      EXPECT_EQ(a.report.outcomes[i].status, b.report.outcomes[i].status);
      EXPECT_EQ(a.report.outcomes[i].message, b.report.outcomes[i].message);
    }
  }
}

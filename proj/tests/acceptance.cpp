// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "grammar_forge/grammar_forge.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"
#include "support/properties.hpp"

using namespace grammar_forge;
using gf_test::ReadFixture;
namespace props = gf_test::props;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;
};

Verdict Fail(std::string why) { return {false, std::move(why)}; }

Verdict FromFailures(const props::Failures& f, const std::string& ok_detail) {
  if (f.empty()) return {true, ok_detail};
  std::string d = std::to_string(f.size()) + " violation(s), first: " + f.front();
  return Fail(d);
}

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

std::vector<std::string> SigTokens(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& t : Tokenize(text)) {
    if (t.IsSignificant() && t.text.find_first_not_of(" \t\r\n") != std::string::npos) {
      out.push_back(t.text);
    }
  }
  return out;
}

Verdict DotGolden() {
  auto start = std::chrono::steady_clock::now();
  Catalog cat = MakeDefaultCatalog();
  auto cfg = ParseConfig(ReadFixture("dot_nodestmt.gro"), cat);
  auto res = ApplyAll(ParseGrammar(ReadFixture("dot_nodestmt.xtext")), cfg.applications, true,
                      cat);
  std::string out = SerializeGrammar(res.grammar);
  double secs = Seconds(start);
  if (res.failed_index) return Fail("strict run stopped at application " +
                                    std::to_string(*res.failed_index));
  if (res.report.Count(OutcomeStatus::kApplied) != 4) return Fail("not all 4 applied");
  if (gf_test::oracle::NormalizedLines(out) !=
      gf_test::oracle::NormalizedLines(ReadFixture("dot_nodestmt_optimized.xtext"))) {
    return Fail("output differs from the optimized NodeStmt fixture");
  }
  if (secs >= 1.0) return Fail("took " + std::to_string(secs) + " s");
  return {true, "4/4 applied, " + std::to_string(secs * 1000) + " ms"};
}

Verdict XcorePermutation() {
  Catalog cat = MakeDefaultCatalog();
  auto res = ApplyAll(ParseGrammar(ReadFixture("xcore_xoperation.xtext")),
                      {{"permuteOptionalKeywordAttrs", ScopeSpec{"XOperation", std::nullopt, {}},
                        {"unordered", "unique"}}},
                      true, cat);
  if (res.failed_index) return Fail(res.report.outcomes.back().message);
  const GrammarRule* rule = res.grammar.FindRule("XOperation");
  std::string body;
  for (const auto& l : rule->lines) body += l.content + "\n";
  auto got = SigTokens(body);
  auto want = SigTokens(ReadFixture("xcore_xoperation_permuted.txt"));
  // the alternation sits inside an optional group
  std::vector<std::string> wrapped = {"("};
  wrapped.insert(wrapped.end(), want.begin(), want.end());
  wrapped.push_back(")");
  wrapped.push_back("?");
  auto it = std::search(got.begin(), got.end(), wrapped.begin(), wrapped.end());
  if (it == got.end()) return Fail("alternation tokens not found in XOperation");
  return {true, std::to_string(want.size()) + " alternation tokens equal"};
}

Verdict Evolution() {
  Catalog cat = MakeDefaultCatalog();
  Grammar v11 = ParseGrammar(ReadFixture("qvto_v1_1.xtext"));
  auto old_cfg = ParseConfig(ReadFixture("qvto_v1_0.gro"), cat).applications;
  auto lenient = ApplyAll(v11, old_cfg, false, cat);
  std::size_t stale = lenient.report.Count(OutcomeStatus::kNoMatch);
  if (stale != 1 || lenient.report.Count(OutcomeStatus::kError) != 0) {
    return Fail(std::to_string(stale) + " stale applications");
  }
  auto new_cfg = ParseConfig(ReadFixture("qvto_v1_1.gro"), cat).applications;
  auto edits = DiffConfigs(old_cfg, new_cfg);
  if (edits.Total() != 1) return Fail("config edit is not exactly one line");
  auto strict = ApplyAll(v11, new_cfg, true, cat);
  if (strict.failed_index) return Fail("strict run with edited config failed");
  return {true, "1 stale, 1 config line edited, strict run ok"};
}

Verdict RoundTrip() {
  auto corpus = gf_test::Corpus();
  if (corpus.size() < 10) return Fail("corpus too small");
  bool big = false;
  for (const auto& [name, text] : corpus) {
    Grammar g = ParseGrammar(text);
    big = big || g.rules.size() >= 100;
    std::string lf;
    for (char c : text) {
      if (c != '\r') lf += c;
    }
    while (!lf.empty() && lf.back() == '\n') lf.pop_back();
    if (!lf.empty()) lf += '\n';
    if (SerializeGrammar(g) != lf) return Fail(name + " not byte-identical");
  }
  auto f = props::RoundTrip();
  if (!f.empty()) return Fail(f.front());
  if (!big) return Fail("no grammar with 100+ rules");
  return {true, std::to_string(corpus.size()) + " grammars byte-identical"};
}

Verdict Validity() {
  auto start = std::chrono::steady_clock::now();
  props::ValidityStats stats;
  auto f = props::Validity(1000, 20, 20261015, &stats);
  double secs = Seconds(start);
  if (!f.empty()) return FromFailures(f, "");
  if (secs >= 60.0) return Fail("took " + std::to_string(secs) + " s");
  return {true, "1000 trials, " + std::to_string(stats.applied) + " applied steps, " +
                    std::to_string(secs) + " s"};
}

Verdict Idempotence() {
  auto f = props::Idempotence();
  for (const auto& [name, text] : gf_test::Corpus()) {
    Grammar g = ParseGrammar(text);
    for (const auto& rule : g.rules) {
      for (const auto& l : rule.lines) {
        for (const auto& t : l.Tokens()) {
          if (t.kind != TokenKind::kString) continue;
          Grammar copy = g;
          std::string v = StringValue(t);
          ApplyOne(copy, {"renameKeyword", {}, {v, v}}, props::Cat());
          if (!(copy == g)) f.push_back(name + ": renameKeyword " + v + " -> " + v);
        }
      }
      if (name == "synthetic-120") break;
    }
  }
  return FromFailures(f, "removal family and identity rename hold on all fixtures");
}

Verdict LastWriteWins() {
  auto f = props::LastWriteWins();
  // the bracket style in the output is the second variant's
  const std::vector<std::pair<std::string, std::string>> style = {
      {"changeBracesToParentheses", "'('"},
      {"changeBracesToSquare", "'['"},
      {"changeBracesToAngle", "'<'"}};
  std::string base = ReadFixture("dot_nodestmt.xtext");
  for (const auto& [x, xs] : style) {
    for (const auto& [y, ys] : style) {
      if (x == y) continue;
      ScopeSpec s{"NodeStmt", std::nullopt, {}};
      auto res = ApplyAll(ParseGrammar(base), {{x, s, {}}, {y, s, {}}}, true, props::Cat());
      std::string out = SerializeGrammar(res.grammar);
      if (out.find(ys) == std::string::npos || out.find(xs) != std::string::npos ||
          out.find("'{'") != std::string::npos) {
        f.push_back(x + " then " + y + ": wrong bracket style");
      }
    }
  }
  return FromFailures(f, "all ordered variant pairs");
}

Verdict Monotonicity() {
  return FromFailures(props::ScopeMonotonicity(), "attribute within rule within global");
}

Verdict ConfigDiffing() {
  Catalog cat = MakeDefaultCatalog();
  auto v10 = ParseConfig(ReadFixture("qvto_v1_0.gro"), cat).applications;
  auto v11 = ParseConfig(ReadFixture("qvto_v1_1.gro"), cat).applications;
  std::size_t d = DiffConfigs(v10, v11).Total();
  if (d != 1) return Fail("#cORA v1.0 -> v1.1 is " + std::to_string(d));
  for (const auto& f : gf_test::ConfigFixtures()) {
    auto a = ParseConfig(ReadFixture(f), cat).applications;
    if (DiffConfigs(a, a).Total() != 0) return Fail(f + " differs from itself");
  }
  return {true, "#cORA 1, self-diff 0 for " + std::to_string(gf_test::ConfigFixtures().size()) +
                    " configs"};
}

Verdict Imitation() {
  Catalog cat = MakeDefaultCatalog();
  auto res = ApplyAll(ParseGrammar(ReadFixture("dot_generated.xtext")),
                      ParseConfig(ReadFixture("dot_generated.gro"), cat).applications, true,
                      cat);
  if (res.failed_index) return Fail("optimizing the generated DOT grammar failed");
  auto rep = MatchAgainstReference(ParseGrammar(ReadFixture("dot_reference.xtext")),
                                   res.grammar);
  for (const auto& m : rep.matched) {
    if (m.reference_rule != "edge_stmt") continue;
    if (m.optimized_rules == std::vector<std::string>{"EdgeStmtNode", "EdgeStmtSubgraph"}) {
      return {true, "edge_stmt <- {EdgeStmtNode, EdgeStmtSubgraph}"};
    }
    return Fail("edge_stmt matched by other rules");
  }
  return Fail("edge_stmt unmatched");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"DOT golden transformation", DotGolden},
      {"Xcore permutation", XcorePermutation},
      {"evolution regression", Evolution},
      {"round trip", RoundTrip},
      {"validity preservation", Validity},
      {"idempotence", Idempotence},
      {"last write wins", LastWriteWins},
      {"scope monotonicity", Monotonicity},
      {"config diffing", ConfigDiffing},
      {"imitation proxy", Imitation},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = Fail(std::string("exception: ") + e.what());
    }
    std::cout << (v.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": "
              << criteria[i].first << " (" << v.detail << ")\n";
    failed += v.ok ? 0 : 1;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
            << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}

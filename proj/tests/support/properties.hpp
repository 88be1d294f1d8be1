#pragma once

// Property checks shared by properties_test and the acceptance binary. Each
// returns the list of violations; empty means the property held.

#include <set>
#include <string>
#include <vector>

#include "grammar_forge/grammar_forge.hpp"
#include "support/corpus.hpp"
#include "support/random_apps.hpp"

namespace gf_test::props {

using Failures = std::vector<std::string>;

inline const grammar_forge::Catalog& Cat() {
  static const grammar_forge::Catalog c = grammar_forge::MakeDefaultCatalog();
  return c;
}

inline std::vector<grammar_forge::ScopeSpec> ScopesOf(const grammar_forge::Grammar& g,
                                                      std::size_t max_rules = 1000) {
  std::vector<grammar_forge::ScopeSpec> out;
  out.push_back({});
  for (std::size_t r = 0; r < g.rules.size() && r < max_rules; ++r) {
    const auto& rule = g.rules[r];
    out.push_back({rule.name, std::nullopt, {}});
    std::set<std::string> seen;
    for (const auto& l : rule.lines) {
      if (l.attr_name && seen.insert(*l.attr_name).second) {
        out.push_back({rule.name, *l.attr_name, {}});
      }
    }
  }
  return out;
}

inline std::string Describe(const std::string& where, const grammar_forge::RuleApplication& a) {
  return where + ": " + grammar_forge::FormatApplication(a);
}

/// parse(serialize(parse(x))) == parse(x) and serialize is a fixed point.
inline Failures RoundTrip() {
  using namespace grammar_forge;
  Failures f;
  for (const auto& [name, text] : Corpus()) {
    Grammar g = ParseGrammar(text);
    std::string once = SerializeGrammar(g);
    Grammar again = ParseGrammar(once);
    if (!(again == g)) f.push_back(name + ": reparsed model differs");
    if (SerializeGrammar(again) != once) f.push_back(name + ": serialization not stable");
  }
  return f;
}

/// Random application sequences never produce text that fails to parse.
/// The engine's own reparse guard is disabled so the property is tested on
/// the transforms themselves.
struct ValidityStats {
  std::size_t applied = 0, no_match = 0, error = 0;
};

inline Failures Validity(int trials, int max_apps, unsigned seed,
                         ValidityStats* stats = nullptr) {
  using namespace grammar_forge;
  Failures f;
  auto corpus = Corpus();
  std::vector<Grammar> grammars;
  for (const auto& [name, text] : corpus) {
    if (name != "synthetic-120") grammars.push_back(ParseGrammar(text));
  }
  grammars.push_back(ParseGrammar(SyntheticGrammar(12, seed)));
  RandomApps gen(Cat(), seed);
  EngineOptions opts;
  opts.verify_reparse = false;
  for (int trial = 0; trial < trials && f.size() < 20; ++trial) {
    Grammar g = grammars[gen.Pick(grammars.size())];
    int n = 1 + static_cast<int>(gen.Pick(static_cast<std::size_t>(max_apps)));
    for (int k = 0; k < n; ++k) {
      RuleApplication app = gen.Next(g);
      Grammar before = g;
      auto o = ApplyOne(g, app, Cat(), opts);
      if (stats) {
        ++(o.status == OutcomeStatus::kApplied   ? stats->applied
           : o.status == OutcomeStatus::kNoMatch ? stats->no_match
                                                 : stats->error);
      }
      if (o.status == OutcomeStatus::kError && !(g == before)) {
        f.push_back(Describe("trial " + std::to_string(trial), app) + ": error did not roll back");
        break;
      }
      try {
        Grammar re = ParseGrammar(SerializeGrammar(g));
        if (!(SerializeGrammar(re) == SerializeGrammar(g))) {
          f.push_back(Describe("trial " + std::to_string(trial), app) + ": unstable text");
          break;
        }
      } catch (const ParseError& e) {
        f.push_back(Describe("trial " + std::to_string(trial), app) + ": " + e.what());
        break;
      }
    }
  }
  return f;
}

inline const std::vector<std::string>& RemovalFamily() {
  static const std::vector<std::string> keys = {"removeBraces",      "removeKeyword",
                                                "removeOptionality", "removeAttribute",
                                                "removeRule",        "removeImport"};
  return keys;
}

/// Applying a removal twice gives the same grammar as applying it once.
inline Failures Idempotence() {
  using namespace grammar_forge;
  Failures f;
  for (const auto& [name, text] : Corpus()) {
    Grammar g = ParseGrammar(text);
    const std::size_t max_rules = name == "synthetic-120" ? 15 : 1000;
    for (const auto& key : RemovalFamily()) {
      const auto& entry = Cat().Find(key)->entry;
      std::vector<RuleApplication> apps;
      if (key == "removeImport") {
        for (const auto& imp : g.imports) apps.push_back({key, {}, {imp.uri}});
      } else {
        for (const auto& s : ScopesOf(g, max_rules)) {
          if (entry.AllowsScope(s.Kind())) apps.push_back({key, s, {}});
        }
      }
      for (const auto& app : apps) {
        Grammar once = g;
        ApplyOne(once, app, Cat());
        Grammar twice = once;
        auto o2 = ApplyOne(twice, app, Cat());
        if (!(twice == once) || o2.status == OutcomeStatus::kApplied) {
          f.push_back(Describe(name, app) + ": second application changed the grammar");
        }
      }
    }
  }
  return f;
}

inline const std::vector<std::vector<grammar_forge::RuleApplication>>& VariantFamilies() {
  using grammar_forge::RuleApplication;
  static const std::vector<std::vector<RuleApplication>> fams = {
      {{"changeBracesToParentheses", {}, {}},
       {"changeBracesToSquare", {}, {}},
       {"changeBracesToAngle", {}, {}}},
  };
  return fams;
}

/// For two variants of the same rule applied to the same scope, the
/// later one decides the result: X;Y equals Y alone.
inline Failures LastWriteWins() {
  using namespace grammar_forge;
  Failures f;
  for (const auto& [name, text] : Corpus()) {
    Grammar g = ParseGrammar(text);
    const std::size_t max_rules = name == "synthetic-120" ? 15 : 1000;
    for (const auto& fam : VariantFamilies()) {
      const auto& entry = Cat().Find(fam[0].catalog_rule)->entry;
      for (const auto& s : ScopesOf(g, max_rules)) {
        if (!entry.AllowsScope(s.Kind())) continue;
        for (const auto& x0 : fam) {
          for (const auto& y0 : fam) {
            if (x0 == y0) continue;
            RuleApplication x = x0;
            RuleApplication y = y0;
            x.scope = s;
            y.scope = s;
            Grammar xy = g;
            auto ox = ApplyOne(xy, x, Cat());
            ApplyOne(xy, y, Cat());
            Grammar only = g;
            ApplyOne(only, y, Cat());
            // an error on X leaves g untouched so the comparison still holds
            (void)ox;
            if (!(xy == only)) {
              f.push_back(Describe(name, x) + " then " + FormatApplication(y) +
                          ": differs from the second alone");
            }
          }
        }
      }
    }
  }
  return f;
}

/// Lines touched at attribute scope are a subset of those touched at the
/// enclosing rule scope, which are a subset of those touched globally.
inline Failures ScopeMonotonicity() {
  using namespace grammar_forge;
  Failures f;
  auto touched = [](const Grammar& g, const RuleApplication& app) {
    Grammar copy = g;
    auto o = ApplyOne(copy, app, Cat());
    return o.status == OutcomeStatus::kApplied ? o.touched : std::set<LineRef>{};
  };
  auto subset = [](const std::set<LineRef>& a, const std::set<LineRef>& b) {
    for (const auto& x : a) {
      if (!b.count(x)) return false;
    }
    return true;
  };
  for (const auto& [name, text] : Corpus()) {
    Grammar g = ParseGrammar(text);
    const std::size_t max_rules = name == "synthetic-120" ? 15 : 1000;
    for (const auto& e : Cat().Entries()) {
      if (!e.AllowsScope(ScopeKind::kGlobal) || !e.AllowsScope(ScopeKind::kRule) ||
          !e.AllowsScope(ScopeKind::kAttribute)) {
        continue;
      }
      std::vector<Args> arg_sets;
      if (e.MinArgs() == 0) arg_sets.push_back({});
      if (e.key == "removeKeyword" || e.key == "addOptionalityToKeyword") {
        arg_sets.push_back({"{"});
      }
      if (e.key == "renameKeyword") arg_sets.push_back({"}", "end"});
      if (e.key == "addAlternativeKeyword") arg_sets.push_back({"{", "begin"});
      for (const auto& args : arg_sets) {
        auto global = touched(g, {e.key, {}, args});
        std::set<LineRef> rule_touched;
        for (const auto& s : ScopesOf(g, max_rules)) {
          if (s.Kind() == ScopeKind::kGlobal) continue;
          RuleApplication app{e.key, s, args};
          auto t = touched(g, app);
          if (s.Kind() == ScopeKind::kRule) {
            rule_touched = t;
            if (!subset(t, global)) f.push_back(Describe(name, app) + ": rule not within global");
          } else if (!subset(t, rule_touched)) {
            f.push_back(Describe(name, app) + ": attribute not within rule");
          }
        }
      }
    }
  }
  return f;
}

}  // namespace gf_test::props

#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "grammar_forge/grammar.hpp"

namespace grammar_forge {

enum class ScopeKind { kGlobal, kRule, kAttribute };

inline const char* ToString(ScopeKind k) {
  switch (k) {
    case ScopeKind::kGlobal: return "global";
    case ScopeKind::kRule: return "rule";
    case ScopeKind::kAttribute: return "attribute";
  }
  return "?";
}

/// Where a rule application acts: the whole grammar, one grammar rule, or
/// the lines of one attribute inside a rule, minus the named exclusions.
struct ScopeSpec {
  std::optional<std::string> rule;
  std::optional<std::string> attr;
  std::vector<std::string> exclusions;

  ScopeKind Kind() const {
    if (attr) return ScopeKind::kAttribute;
    if (rule) return ScopeKind::kRule;
    return ScopeKind::kGlobal;
  }

  /// Empty when valid, otherwise the reason.
  std::optional<std::string> Problem() const {
    if (attr && !rule) return "an attribute selector requires a rule selector";
    if (attr && !exclusions.empty()) {
      return "exclusions cannot be combined with an attribute selector";
    }
    return std::nullopt;
  }

  bool Excludes(const std::string& name) const {
    return std::find(exclusions.begin(), exclusions.end(), name) !=
           exclusions.end();
  }

  bool operator==(const ScopeSpec&) const = default;
};

struct ScopedRule {
  std::size_t rule_index;
  std::vector<std::size_t> lines;  // document order
};

struct ScopeResolution {
  ScopeSpec spec;
  std::vector<ScopedRule> rules;
  std::optional<std::string> not_found;  // ScopeNotFound reason

  bool Found() const { return !not_found.has_value(); }
};

/// Localizes the grammar rules and lines an application affects.
/// An unknown rule or attribute is reported through `not_found`.
inline ScopeResolution ResolveScope(const Grammar& g, const ScopeSpec& scope) {
  ScopeResolution res;
  res.spec = scope;
  auto lines_of = [&](std::size_t ri, bool filter_attr) {
    ScopedRule sr{ri, {}};
    const auto& rule = g.rules[ri];
    for (std::size_t li = 0; li < rule.lines.size(); ++li) {
      // enum literals look like assignments but are not attributes
      const auto attr = rule.kind == RuleKind::kParser ? rule.lines[li].attr_name
                                                       : std::nullopt;
      if (filter_attr && attr != scope.attr) continue;
      if (attr && scope.Excludes(*attr)) continue;
      sr.lines.push_back(li);
    }
    return sr;
  };

  switch (scope.Kind()) {
    case ScopeKind::kGlobal:
      for (std::size_t ri = 0; ri < g.rules.size(); ++ri) {
        if (scope.Excludes(g.rules[ri].name)) continue;
        res.rules.push_back(lines_of(ri, false));
      }
      break;
    case ScopeKind::kRule:
    case ScopeKind::kAttribute: {
      auto ri = g.RuleIndex(*scope.rule);
      if (!ri) {
        res.not_found = "no grammar rule named '" + *scope.rule + "'";
        break;
      }
      ScopedRule sr = lines_of(*ri, scope.Kind() == ScopeKind::kAttribute);
      if (scope.Kind() == ScopeKind::kAttribute && sr.lines.empty()) {
        res.not_found = "no attribute '" + *scope.attr + "' in grammar rule '" +
                        *scope.rule + "'";
        break;
      }
      res.rules.push_back(std::move(sr));
      break;
    }
  }
  return res;
}

}  // namespace grammar_forge

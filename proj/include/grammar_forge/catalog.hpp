#pragma once

// Registry of optimization rules. Each entry pairs its metadata (subject,
// allowed scopes, argument signature) with a transform that edits a
// Grammar inside a resolved scope.

#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "grammar_forge/grammar.hpp"
#include "grammar_forge/scope.hpp"

namespace grammar_forge {

enum class Subject {
  kKeyword,
  kRule,
  kAttribute,
  kOptionality,
  kMultiplicity,
  kBrace,
  kImport,
  kSymbol,
  kPrimitiveType,
  kLine,
  kRuleCall,
};

inline const char* ToString(Subject s) {
  switch (s) {
    case Subject::kKeyword: return "keyword";
    case Subject::kRule: return "rule";
    case Subject::kAttribute: return "attribute";
    case Subject::kOptionality: return "optionality";
    case Subject::kMultiplicity: return "multiplicity";
    case Subject::kBrace: return "brace";
    case Subject::kImport: return "import";
    case Subject::kSymbol: return "symbol";
    case Subject::kPrimitiveType: return "primitive-type";
    case Subject::kLine: return "line";
    case Subject::kRuleCall: return "rule-call";
  }
  return "?";
}

struct ArgSpec {
  std::string name;
  bool optional = false;
};

struct CatalogEntry {
  std::string key;
  Subject subject = Subject::kKeyword;
  std::set<ScopeKind> scope_kinds;
  std::vector<ArgSpec> args;
  std::string summary;

  std::size_t MinArgs() const {
    std::size_t n = 0;
    for (const auto& a : args) n += a.optional ? 0 : 1;
    return n;
  }
  std::size_t MaxArgs() const { return args.size(); }
  bool AllowsScope(ScopeKind k) const { return scope_kinds.count(k) != 0; }
};

/// A line touched by a transform, identified by rule name and the line's
/// index in that rule before the application ran.
struct LineRef {
  std::string rule;
  std::size_t line;

  auto operator<=>(const LineRef&) const = default;
};

struct TransformResult {
  std::set<LineRef> changed_lines;
  std::set<std::string> changed_rules;
  std::set<std::string> changed_imports;  // by uri
  std::string note;  // reason for a no-match, when known

  bool Changed() const {
    return !changed_lines.empty() || !changed_rules.empty() ||
           !changed_imports.empty();
  }
  void Touch(const std::string& rule, std::size_t line) {
    changed_lines.insert({rule, line});
    changed_rules.insert(rule);
  }
};

/// Raised by transforms on malformed arguments or unmet preconditions.
class TransformError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DuplicateKey : public std::runtime_error {
 public:
  explicit DuplicateKey(const std::string& key)
      : std::runtime_error("optimization rule '" + key + "' is already registered") {}
};

using Args = std::vector<std::string>;
using Transform =
    std::function<TransformResult(Grammar&, const ScopeResolution&, const Args&)>;

class Catalog {
 public:
  struct Rule {
    CatalogEntry entry;
    Transform transform;
  };

  void Register(CatalogEntry entry, Transform transform) {
    if (entry.scope_kinds.empty()) {
      throw std::invalid_argument("catalog entry '" + entry.key +
                                  "' allows no scope kind");
    }
    if (rules_.count(entry.key) != 0) throw DuplicateKey(entry.key);
    std::string key = entry.key;
    rules_.emplace(std::move(key), Rule{std::move(entry), std::move(transform)});
  }

  const Rule* Find(const std::string& key) const {
    auto it = rules_.find(key);
    return it == rules_.end() ? nullptr : &it->second;
  }
  bool Contains(const std::string& key) const { return Find(key) != nullptr; }

  /// Entries sorted by key.
  std::vector<CatalogEntry> Entries() const {
    std::vector<CatalogEntry> out;
    for (const auto& [key, rule] : rules_) out.push_back(rule.entry);
    return out;
  }
  std::size_t size() const { return rules_.size(); }

 private:
  std::map<std::string, Rule> rules_;
};

}  // namespace grammar_forge

#pragma once

// Applies configured rule applications to a grammar, in order.

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "grammar_forge/catalog.hpp"
#include "grammar_forge/grammar.hpp"
#include "grammar_forge/scope.hpp"

namespace grammar_forge {

struct RuleApplication {
  std::string catalog_rule;
  ScopeSpec scope;
  std::vector<std::string> args;

  bool operator==(const RuleApplication&) const = default;
};

enum class OutcomeStatus { kApplied, kNoMatch, kError };

inline const char* ToString(OutcomeStatus s) {
  switch (s) {
    case OutcomeStatus::kApplied: return "applied";
    case OutcomeStatus::kNoMatch: return "no-match";
    case OutcomeStatus::kError: return "error";
  }
  return "?";
}

struct ApplicationOutcome {
  RuleApplication application;
  std::size_t matched_lines = 0;
  std::size_t matched_rules = 0;
  OutcomeStatus status = OutcomeStatus::kNoMatch;
  std::string message;
  std::set<LineRef> touched;  // lines changed, by pre-application position
};

struct EngineReport {
  std::vector<ApplicationOutcome> outcomes;
  std::size_t gora_count = 0;
  // Rules renamed by the run, oldest first, as (from, to).
  std::vector<std::pair<std::string, std::string>> renames;

  std::size_t Count(OutcomeStatus s) const {
    std::size_t n = 0;
    for (const auto& o : outcomes) n += o.status == s ? 1 : 0;
    return n;
  }
};

struct EngineOptions {
  // Reject any application whose result no longer parses.
  bool verify_reparse = true;
};

struct EngineResult {
  Grammar grammar;
  EngineReport report;
  // Index of the application that stopped a strict run.
  std::optional<std::size_t> failed_index;
};

/// Runs one application against `g`. On error `g` is left unchanged.
inline ApplicationOutcome ApplyOne(Grammar& g, const RuleApplication& app,
                                   const Catalog& catalog,
                                   const EngineOptions& options = {}) {
  ApplicationOutcome out;
  out.application = app;
  auto fail = [&](std::string msg) {
    out.status = OutcomeStatus::kError;
    out.message = std::move(msg);
    return out;
  };

  const Catalog::Rule* rule = catalog.Find(app.catalog_rule);
  if (rule == nullptr) return fail("unknown optimization rule '" + app.catalog_rule + "'");
  if (auto problem = app.scope.Problem()) return fail(*problem);
  if (!rule->entry.AllowsScope(app.scope.Kind())) {
    return fail(std::string("'") + app.catalog_rule + "' does not accept " +
                ToString(app.scope.Kind()) + " scope");
  }
  if (app.args.size() < rule->entry.MinArgs() || app.args.size() > rule->entry.MaxArgs()) {
    return fail("'" + app.catalog_rule + "' takes " +
                std::to_string(rule->entry.MinArgs()) + ".." +
                std::to_string(rule->entry.MaxArgs()) + " arguments, got " +
                std::to_string(app.args.size()));
  }

  ScopeResolution scope = ResolveScope(g, app.scope);
  if (!scope.Found()) {
    out.message = *scope.not_found;
    return out;
  }

  Grammar snapshot = g;
  TransformResult res;
  try {
    res = rule->transform(g, scope, app.args);
  } catch (const TransformError& e) {
    g = std::move(snapshot);
    return fail(e.what());
  } catch (const std::exception& e) {
    g = std::move(snapshot);
    return fail(std::string("internal failure: ") + e.what());
  }

  if (g == snapshot) {
    out.message = res.note.empty() ? "nothing to change in scope" : res.note;
    return out;
  }
  if (options.verify_reparse) {
    try {
      ParseGrammar(SerializeGrammar(g));
    } catch (const ParseError& e) {
      g = std::move(snapshot);
      return fail(std::string("result would not parse: ") + e.what());
    }
  }
  out.status = OutcomeStatus::kApplied;
  out.touched = res.changed_lines;
  out.matched_lines = res.changed_lines.size() + res.changed_imports.size();
  out.matched_rules = res.changed_rules.size();
  if (out.matched_lines + out.matched_rules == 0) out.matched_lines = 1;
  out.message = res.note;
  return out;
}

/// Applies `apps` in order, each to the result of the previous one. A strict
/// run stops at the first error or no-match; otherwise every application
/// runs and the report collects all outcomes.
inline EngineResult ApplyAll(Grammar g, const std::vector<RuleApplication>& apps,
                             bool strict, const Catalog& catalog,
                             const EngineOptions& options = {}) {
  EngineResult result;
  for (std::size_t i = 0; i < apps.size(); ++i) {
    std::optional<std::string> renamed_from;
    if (apps[i].catalog_rule == "renameRule" && apps[i].scope.rule) {
      renamed_from = *apps[i].scope.rule;
    }
    ApplicationOutcome o = ApplyOne(g, apps[i], catalog, options);
    if (renamed_from && o.status == OutcomeStatus::kApplied && !apps[i].args.empty()) {
      result.report.renames.emplace_back(*renamed_from, apps[i].args[0]);
    }
    const bool failed = o.status != OutcomeStatus::kApplied;
    result.report.outcomes.push_back(std::move(o));
    if (strict && failed) {
      result.failed_index = i;
      break;
    }
  }
  result.report.gora_count = result.report.outcomes.size();
  result.grammar = std::move(g);
  return result;
}

}  // namespace grammar_forge

#pragma once

#include <string>
#include <utility>

#include "grammar_forge/calls.hpp"
#include "grammar_forge/catalog.hpp"
#include "grammar_forge/token_edit.hpp"

namespace grammar_forge::rules {

/// Throws when an edit left `rule` with a body the parser would reject
/// (an empty body or an empty alternative).
inline void RequireWellFormed(const GrammarRule& rule) {
  if (auto problem = detail::CheckBodyStructure(rule)) {
    throw TransformError("grammar rule '" + rule.name + "' would be left with an " +
                         *problem);
  }
}

/// Runs `fn(tokens, body_from)` over every scoped line and records the lines
/// whose text changed. `fn` must only edit tokens at or after `body_from`.
template <class Fn>
TransformResult EditScopedLines(Grammar& g, const ScopeResolution& scope, Fn&& fn) {
  TransformResult res;
  for (const auto& sr : scope.rules) {
    GrammarRule& rule = g.rules[sr.rule_index];
    for (std::size_t li : sr.lines) {
      LineEntry& line = rule.lines[li];
      TokenList toks = line.Tokens();
      const std::size_t from = BodyFrom(rule, li, toks);
      fn(toks, from);
      std::string before = line.content;
      line.SetTokens(toks);
      if (line.content != before) res.Touch(rule.name, li);
    }
  }
  for (const auto& sr : scope.rules) {
    const GrammarRule& rule = g.rules[sr.rule_index];
    for (const auto& ref : res.changed_lines) {
      if (ref.rule == rule.name) {
        RequireWellFormed(rule);
        break;
      }
    }
  }
  return res;
}

inline void RequireArg(const Args& args, std::size_t i, const char* what) {
  if (i >= args.size() || args[i].empty()) {
    throw TransformError(std::string("missing argument: ") + what);
  }
}

inline std::string ArgOr(const Args& args, std::size_t i, std::string fallback) {
  return i < args.size() && !args[i].empty() ? args[i] : std::move(fallback);
}

/// True when the body of `rule` has a `|` at nesting depth zero, i.e. the
/// rule is a list of alternatives rather than one sequence.
inline bool HasTopLevelAlternatives(const GrammarRule& rule) {
  int depth = 0;
  for (std::size_t li = 0; li < rule.lines.size(); ++li) {
    TokenList t = rule.lines[li].Tokens();
    for (std::size_t k = BodyFrom(rule, li, t); k < t.size(); ++k) {
      if (edit::IsOpen(t[k]) || t[k].IsPunct('{')) ++depth;
      if (edit::IsClose(t[k]) || t[k].IsPunct('}')) --depth;
      if (depth == 0 && t[k].IsPunct('|')) return true;
    }
  }
  return false;
}

enum class BodyEdge { kStart, kEnd };

inline BodyEdge ParseEdge(const Args& args, std::size_t i) {
  std::string v = ArgOr(args, i, "start");
  if (v == "start") return BodyEdge::kStart;
  if (v == "end") return BodyEdge::kEnd;
  throw TransformError("position must be 'start' or 'end', got '" + v + "'");
}

/// Inserts `token` as the first body element of `rule` (after any leading
/// semantic actions) or right before its terminating ';'. When the anchor
/// token opens its own line, the token goes on a new line with the same
/// indentation; otherwise it is inserted inline.
inline void InsertAtBodyEdge(GrammarRule& rule, BodyEdge edge, const Token& token,
                             TransformResult& res) {
  if (HasTopLevelAlternatives(rule)) {
    throw TransformError("grammar rule '" + rule.name +
                         "' has top-level alternatives; no single body start/end");
  }
  std::size_t anchor_line = edit::npos;
  std::size_t anchor_tok = edit::npos;
  if (edge == BodyEdge::kStart) {
    int action = 0;
    for (std::size_t li = 0; li < rule.lines.size() && anchor_line == edit::npos;
         ++li) {
      TokenList t = rule.lines[li].Tokens();
      for (std::size_t k = BodyFrom(rule, li, t); k < t.size(); ++k) {
        if (!t[k].IsSignificant()) continue;
        if (t[k].IsPunct('{')) ++action;
        if (action > 0) {
          if (t[k].IsPunct('}')) --action;
          continue;
        }
        anchor_line = li;
        anchor_tok = k;
        break;
      }
    }
  } else {
    anchor_line = rule.lines.size() - 1;
    anchor_tok = edit::LastSig(rule.lines[anchor_line].Tokens());
  }
  if (anchor_line == edit::npos || anchor_tok == edit::npos) {
    throw TransformError("grammar rule '" + rule.name + "' has no body");
  }

  LineEntry& line = rule.lines[anchor_line];
  TokenList t = line.Tokens();
  const bool own_line = anchor_line >= rule.HeaderLineCount() &&
                        edit::FirstSig(t) == anchor_tok;
  if (own_line) {
    LineEntry fresh(edit::Indentation(line.content) + token.text);
    rule.lines.insert(rule.lines.begin() + static_cast<std::ptrdiff_t>(anchor_line),
                      std::move(fresh));
    res.Touch(rule.name, anchor_line);
    return;
  }
  if (edge == BodyEdge::kEnd) {
    edit::InsertAt(t, anchor_tok, {Ws(), token});
  } else {
    edit::InsertAt(t, anchor_tok, {token, Ws()});
  }
  line.SetTokens(t);
  res.Touch(rule.name, anchor_line);
}

/// Rules the scope resolved to, as pointers (the scope must not be used
/// after the rule list changes).
inline std::vector<GrammarRule*> ScopedRules(Grammar& g, const ScopeResolution& s) {
  std::vector<GrammarRule*> out;
  for (const auto& sr : s.rules) out.push_back(&g.rules[sr.rule_index]);
  return out;
}

}  // namespace grammar_forge::rules

#pragma once

// Keyword, symbol and brace rules: edits of quoted tokens.

#include <algorithm>
#include <string>
#include <vector>

#include "grammar_forge/rules/common.hpp"

namespace grammar_forge::rules {

namespace detail {

// Erases every body token selected by `pred`, then tidies empty groups.
template <class Pred>
void EraseQuoted(TokenList& t, std::size_t from, Pred pred) {
  std::vector<std::size_t> hits;
  for (std::size_t i = from; i < t.size(); ++i) {
    if (t[i].kind == TokenKind::kString && !edit::IsAssignedValue(t, i) &&
        pred(t[i])) {
      hits.push_back(i);
    }
  }
  for (auto it = hits.rbegin(); it != hits.rend(); ++it) edit::EraseAt(t, *it);
  if (!hits.empty()) edit::Tidy(t);
}

inline Token Requote(const Token& original, const std::string& value) {
  const char q = original.text.empty() ? '\'' : original.text.front();
  return MakeKeyword(value, q);
}

}  // namespace detail

inline TransformResult RemoveBraces(Grammar& g, const ScopeResolution& s,
                                    const Args&) {
  return EditScopedLines(g, s, [](TokenList& t, std::size_t from) {
    detail::EraseQuoted(t, from, [](const Token& tok) {
      auto v = StringValue(tok);
      return v == "{" || v == "}";
    });
  });
}

inline TransformResult RemoveKeyword(Grammar& g, const ScopeResolution& s,
                                     const Args& args) {
  const std::string only = ArgOr(args, 0, "");
  return EditScopedLines(g, s, [&](TokenList& t, std::size_t from) {
    detail::EraseQuoted(t, from, [&](const Token& tok) {
      return IsKeywordToken(tok) && (only.empty() || StringValue(tok) == only);
    });
  });
}

inline TransformResult RenameKeyword(Grammar& g, const ScopeResolution& s,
                                     const Args& args) {
  RequireArg(args, 0, "keyword to rename");
  RequireArg(args, 1, "new keyword");
  const std::string& from_kw = args[0];
  const std::string& to_kw = args[1];
  return EditScopedLines(g, s, [&](TokenList& t, std::size_t from) {
    for (std::size_t i = from; i < t.size(); ++i) {
      if (t[i].kind == TokenKind::kString && StringValue(t[i]) == from_kw) {
        t[i] = detail::Requote(t[i], to_kw);
      }
    }
  });
}

inline TransformResult AddKeywordToRule(Grammar& g, const ScopeResolution& s,
                                        const Args& args) {
  RequireArg(args, 0, "keyword");
  const BodyEdge edge = ParseEdge(args, 1);
  TransformResult res;
  for (GrammarRule* rule : ScopedRules(g, s)) {
    InsertAtBodyEdge(*rule, edge, MakeKeyword(args[0]), res);
  }
  return res;
}

inline TransformResult AddSymbolToRule(Grammar& g, const ScopeResolution& s,
                                       const Args& args) {
  RequireArg(args, 0, "symbol");
  if (IsIdentifierShaped(args[0])) {
    throw TransformError("'" + args[0] + "' is a keyword, not a symbol");
  }
  const BodyEdge edge = ParseEdge(args, 1);
  TransformResult res;
  for (GrammarRule* rule : ScopedRules(g, s)) {
    InsertAtBodyEdge(*rule, edge, MakeKeyword(args[0]), res);
  }
  return res;
}

inline TransformResult AddKeywordToAttr(Grammar& g, const ScopeResolution& s,
                                        const Args& args) {
  RequireArg(args, 0, "keyword");
  const std::string where = ArgOr(args, 1, "before");
  if (where != "before" && where != "after") {
    throw TransformError("position must be 'before' or 'after', got '" + where + "'");
  }
  const std::string attr = s.spec.attr.value_or("");
  return EditScopedLines(g, s, [&](TokenList& t, std::size_t from) {
    auto found = edit::FindAssignments(t, from);
    for (auto it = found.rbegin(); it != found.rend(); ++it) {
      if (t[it->name].text != attr) continue;
      if (where == "before") {
        edit::InsertAt(t, it->name, {MakeKeyword(args[0]), Ws()});
      } else {
        edit::InsertAt(t, it->End() + 1, {Ws(), MakeKeyword(args[0])});
      }
    }
  });
}

/// Inserts the keyword in front of the first body token of the rule line
/// with the given 1-based number (the header is line 1).
inline TransformResult AddKeywordToLine(Grammar& g, const ScopeResolution& s,
                                        const Args& args) {
  RequireArg(args, 0, "keyword");
  RequireArg(args, 1, "line number");
  std::size_t number = 0;
  try {
    std::size_t used = 0;
    long v = std::stol(args[1], &used);
    if (used != args[1].size() || v < 1) throw std::invalid_argument("");
    number = static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw TransformError("line number must be a positive integer, got '" +
                         args[1] + "'");
  }
  TransformResult res;
  for (GrammarRule* rule : ScopedRules(g, s)) {
    if (number > rule->lines.size()) {
      res.note = "grammar rule '" + rule->name + "' has only " +
                 std::to_string(rule->lines.size()) + " lines";
      continue;
    }
    const std::size_t li = number - 1;
    LineEntry& line = rule->lines[li];
    TokenList t = line.Tokens();
    const std::size_t from = BodyFrom(*rule, li, t);
    if (from >= t.size() && li < rule->HeaderLineCount() - 1) {
      throw TransformError("line " + args[1] + " is inside the rule header");
    }
    std::size_t at = edit::FirstSig(t, from);
    if (at == edit::npos) {
      t.push_back(Ws());
      t.push_back(MakeKeyword(args[0]));
    } else {
      edit::InsertAt(t, at, {MakeKeyword(args[0]), Ws()});
    }
    line.SetTokens(t);
    res.Touch(rule->name, li);
  }
  return res;
}

/// `'k'` becomes `('k' | 'alt')`; an existing pure keyword alternation
/// group containing 'k' gains one more branch.
inline TransformResult AddAlternativeKeyword(Grammar& g, const ScopeResolution& s,
                                             const Args& args) {
  RequireArg(args, 0, "existing keyword");
  RequireArg(args, 1, "alternative keyword");
  const std::string& kw = args[0];
  const std::string& alt = args[1];
  if (kw == alt) throw TransformError("alternative equals the existing keyword");

  auto keyword_group = [](const TokenList& t, std::size_t open, std::size_t close) {
    bool expect_string = true;
    bool saw_bar = false;
    for (std::size_t k = open + 1; k < close; ++k) {
      if (!t[k].IsSignificant()) continue;
      if (expect_string && t[k].kind != TokenKind::kString) return false;
      if (!expect_string && !t[k].IsPunct('|')) return false;
      saw_bar = saw_bar || t[k].IsPunct('|');
      expect_string = !expect_string;
    }
    return saw_bar && !expect_string;
  };

  return EditScopedLines(g, s, [&](TokenList& t, std::size_t from) {
    for (std::size_t i = t.size(); i-- > from;) {
      if (t[i].kind != TokenKind::kString || StringValue(t[i]) != kw) continue;
      std::size_t open = edit::EnclosingGroup(t, i);
      std::size_t close = open == edit::npos ? edit::npos : edit::MatchingClose(t, open);
      if (close != edit::npos && keyword_group(t, open, close)) {
        bool present = false;
        for (std::size_t k = open + 1; k < close; ++k) {
          present = present ||
                    (t[k].kind == TokenKind::kString && StringValue(t[k]) == alt);
        }
        if (!present) {
          std::size_t last = edit::PrevSig(t, close);
          edit::InsertAt(t, last + 1,
                         {Ws(), Punct('|'), Ws(), detail::Requote(t[i], alt)});
        }
        i = open;  // the whole group is handled
        continue;
      }
      Token original = t[i];
      t.erase(t.begin() + static_cast<std::ptrdiff_t>(i));
      edit::InsertAt(t, i,
                     {Punct('('), original, Ws(), Punct('|'), Ws(),
                      detail::Requote(original, alt), Punct(')')});
    }
  });
}

namespace detail {

inline TransformResult ChangeBraces(Grammar& g, const ScopeResolution& s,
                                    const std::string& open,
                                    const std::string& close) {
  return EditScopedLines(g, s, [&](TokenList& t, std::size_t from) {
    for (std::size_t i = from; i < t.size(); ++i) {
      if (t[i].kind != TokenKind::kString || edit::IsAssignedValue(t, i)) continue;
      const std::string v = StringValue(t[i]);
      if (v == "{" || v == "(" || v == "[" || v == "<") {
        t[i] = Requote(t[i], open);
      } else if (v == "}" || v == ")" || v == "]" || v == ">") {
        t[i] = Requote(t[i], close);
      }
    }
  });
}

}  // namespace detail

inline TransformResult ChangeBracesToParentheses(Grammar& g,
                                                 const ScopeResolution& s,
                                                 const Args&) {
  return detail::ChangeBraces(g, s, "(", ")");
}
inline TransformResult ChangeBracesToSquare(Grammar& g, const ScopeResolution& s,
                                            const Args&) {
  return detail::ChangeBraces(g, s, "[", "]");
}
inline TransformResult ChangeBracesToAngle(Grammar& g, const ScopeResolution& s,
                                           const Args&) {
  return detail::ChangeBraces(g, s, "<", ">");
}

}  // namespace grammar_forge::rules

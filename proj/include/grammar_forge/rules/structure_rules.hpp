#pragma once

// Rules that add or remove whole lines, grammar rules and imports, or that
// rewrite rule calls.

#include <algorithm>
#include <string>
#include <vector>

#include "grammar_forge/rules/common.hpp"

namespace grammar_forge::rules {

/// Deletes the attribute's line. When the line also carries the rule header
/// or terminator, or opens a group that closes elsewhere, only the
/// assignment (and a same-line group left holding nothing but keywords) is
/// removed.
inline TransformResult RemoveAttribute(Grammar& g, const ScopeResolution& s,
                                       const Args&) {
  TransformResult res;
  const std::string attr = s.spec.attr.value_or("");
  for (const auto& sr : s.rules) {
    GrammarRule& rule = g.rules[sr.rule_index];
    std::vector<std::size_t> whole;
    for (std::size_t li : sr.lines) {
      LineEntry& line = rule.lines[li];
      TokenList t = line.Tokens();
      const std::size_t from = BodyFrom(rule, li, t);
      int depth = 0;
      bool balanced = true;
      for (std::size_t k = from; k < t.size(); ++k) {
        if (edit::IsOpen(t[k]) || t[k].IsPunct('{')) ++depth;
        if (edit::IsClose(t[k]) || t[k].IsPunct('}')) balanced = balanced && --depth >= 0;
      }
      balanced = balanced && depth == 0;
      bool only_attr = true;
      for (const auto& a : edit::FindAssignments(t, from)) {
        only_attr = only_attr && t[a.name].text == attr;
      }
      if (li >= rule.HeaderLineCount() && !grammar_forge::detail::EndsRule(t) &&
          balanced && only_attr) {
        whole.push_back(li);
        continue;
      }
      for (;;) {
        auto a = edit::FindAssignment(t, attr, from);
        if (!a) break;
        std::size_t first = a->name;
        std::size_t last = a->End();
        std::size_t open = edit::EnclosingGroup(t, a->name);
        if (open != edit::npos && open >= from) {
          std::size_t close = edit::MatchingClose(t, open);
          bool only_keywords = close != edit::npos;
          for (std::size_t k = open + 1; only_keywords && k < close; ++k) {
            if (k >= first && k <= last) continue;
            only_keywords = !t[k].IsSignificant() || t[k].kind == TokenKind::kString;
          }
          if (only_keywords) {
            first = open;
            last = close;
            std::size_t card = edit::NextSig(t, close);
            if (card != edit::npos && t[card].IsCardinality()) last = card;
          }
        }
        edit::EraseRange(t, first, last);
        edit::Tidy(t);
      }
      std::string before = line.content;
      line.SetTokens(t);
      if (line.content != before) res.Touch(rule.name, li);
    }
    for (auto it = whole.rbegin(); it != whole.rend(); ++it) {
      rule.lines.erase(rule.lines.begin() + static_cast<std::ptrdiff_t>(*it));
      res.Touch(rule.name, *it);
    }
    RequireWellFormed(rule);
  }
  return res;
}

/// Deletes grammar rules. Call sites are left in place.
inline TransformResult RemoveRule(Grammar& g, const ScopeResolution& s, const Args&) {
  TransformResult res;
  std::vector<std::size_t> doomed;
  for (const auto& sr : s.rules) doomed.push_back(sr.rule_index);
  std::sort(doomed.rbegin(), doomed.rend());
  for (std::size_t ri : doomed) {
    res.changed_rules.insert(g.rules[ri].name);
    g.rules.erase(g.rules.begin() + static_cast<std::ptrdiff_t>(ri));
  }
  return res;
}

/// Renames a grammar rule and every call site in the grammar. A parser
/// rule without a `returns` clause gets one so its inferred type stays.
inline TransformResult RenameRule(Grammar& g, const ScopeResolution& s,
                                  const Args& args) {
  RequireArg(args, 0, "new rule name");
  const std::string& to = args[0];
  if (!IsIdentifierShaped(to)) {
    throw TransformError("'" + to + "' is not a valid grammar rule name");
  }
  TransformResult res;
  for (const auto& sr : s.rules) {
    GrammarRule& target = g.rules[sr.rule_index];
    const std::string from_name = target.name;
    if (from_name == to) continue;
    if (g.FindRule(to) != nullptr) {
      throw TransformError("a grammar rule named '" + to + "' already exists");
    }
    TokenList h = target.lines[0].Tokens();
    for (std::size_t k = 0; k < h.size(); ++k) {
      if (h[k].Is(TokenKind::kIdentifier, from_name)) {
        h[k].text = to;
        if (!target.returns_type && target.kind == RuleKind::kParser) {
          edit::InsertAt(h, k + 1,
                         {Ws(), Token{TokenKind::kIdentifier, "returns"}, Ws(),
                          Token{TokenKind::kIdentifier, from_name}});
          target.returns_type = from_name;
        }
        break;
      }
    }
    target.lines[0].SetTokens(h);
    target.name = to;
    res.Touch(to, 0);

    for (GrammarRule& rule : g.rules) {
      for (std::size_t li = 0; li < rule.lines.size(); ++li) {
        TokenList t = rule.lines[li].Tokens();
        bool changed = false;
        for (const auto& cs : FindCallSites(t, BodyFrom(rule, li, t), rule.kind)) {
          if (cs.token == cs.last && t[cs.token].text == from_name) {
            t[cs.token].text = to;
            changed = true;
          }
        }
        if (changed) {
          rule.lines[li].SetTokens(t);
          res.Touch(rule.name, li);
        }
      }
    }
  }
  return res;
}

inline TransformResult AddImport(Grammar& g, const ScopeResolution&, const Args& args) {
  RequireArg(args, 0, "import uri");
  TransformResult res;
  for (const auto& imp : g.imports) {
    if (imp.uri == args[0]) {
      res.note = "import '" + args[0] + "' already present";
      return res;
    }
  }
  ImportDecl imp;
  imp.uri = args[0];
  if (args.size() > 1 && !args[1].empty()) {
    if (!IsIdentifierShaped(args[1])) {
      throw TransformError("'" + args[1] + "' is not a valid import alias");
    }
    imp.alias = args[1];
  }
  imp.leading = "";
  g.imports.push_back(std::move(imp));
  res.changed_imports.insert(args[0]);
  return res;
}

inline TransformResult RemoveImport(Grammar& g, const ScopeResolution&,
                                    const Args& args) {
  RequireArg(args, 0, "import uri");
  TransformResult res;
  for (std::size_t i = 0; i < g.imports.size(); ++i) {
    if (g.imports[i].uri != args[0]) continue;
    std::string leading = std::move(g.imports[i].leading);
    g.imports.erase(g.imports.begin() + static_cast<std::ptrdiff_t>(i));
    if (i < g.imports.size()) {
      g.imports[i].leading = leading + g.imports[i].leading;
    } else if (!g.rules.empty()) {
      g.rules.front().leading = leading + g.rules.front().leading;
    } else {
      g.trailing_text = leading + g.trailing_text;
    }
    res.changed_imports.insert(args[0]);
    return res;
  }
  res.note = "no import of '" + args[0] + "'";
  return res;
}

/// Surrounds every assignment of the attribute with `'[' ... ']'`.
/// Applying it twice nests the brackets.
inline TransformResult AddSquareBracketsToAttr(Grammar& g, const ScopeResolution& s,
                                               const Args&) {
  const std::string attr = s.spec.attr.value_or("");
  return EditScopedLines(g, s, [&](TokenList& t, std::size_t from) {
    auto found = edit::FindAssignments(t, from);
    for (auto it = found.rbegin(); it != found.rend(); ++it) {
      if (t[it->name].text != attr) continue;
      edit::InsertAt(t, it->End() + 1, {Ws(), MakeKeyword("]")});
      edit::InsertAt(t, it->name, {MakeKeyword("["), Ws()});
    }
  });
}

/// Replaces the rule called by an attribute's assignment.
inline TransformResult ChangeCalledRule(Grammar& g, const ScopeResolution& s,
                                        const Args& args) {
  RequireArg(args, 0, "attribute");
  RequireArg(args, 1, "new called rule");
  const std::string& attr = args[0];
  const std::string& to = args[1];
  if (!IsIdentifierShaped(to)) {
    throw TransformError("'" + to + "' is not a valid grammar rule name");
  }
  return EditScopedLines(g, s, [&](TokenList& t, std::size_t from) {
    auto found = edit::FindAssignments(t, from);
    for (auto it = found.rbegin(); it != found.rend(); ++it) {
      if (t[it->name].text != attr) continue;
      const Token& rhs = t[it->rhs_begin];
      if (rhs.kind == TokenKind::kIdentifier) {
        t.erase(t.begin() + static_cast<std::ptrdiff_t>(it->rhs_begin),
                t.begin() + static_cast<std::ptrdiff_t>(it->rhs_end + 1));
        edit::InsertAt(t, it->rhs_begin, {Token{TokenKind::kIdentifier, to}});
      } else if (rhs.IsPunct('[')) {
        std::size_t type = edit::NextSig(t, it->rhs_begin);
        if (type == edit::npos || t[type].kind != TokenKind::kIdentifier) {
          throw TransformError("malformed cross-reference for '" + attr + "'");
        }
        t[type].text = to;
      } else if (rhs.kind == TokenKind::kString) {
        throw TransformError("attribute '" + attr +
                             "' assigns a keyword, not a rule call");
      } else {
        throw TransformError("attribute '" + attr +
                             "' assigns a group; change its rule calls individually");
      }
    }
  });
}

/// Turns two adjacent optional boolean keyword attributes
///   (a?='ka')?
///   (b?='kb')?
/// into an alternation that accepts both keyword orders:
///   (a?='ka' b?='kb'? |
///   b?='kb' a?='ka'?)?
inline TransformResult PermuteOptionalKeywordAttrs(Grammar& g, const ScopeResolution& s,
                                                   const Args& args) {
  RequireArg(args, 0, "first attribute");
  RequireArg(args, 1, "second attribute");
  if (args[0] == args[1]) throw TransformError("the two attributes must differ");
  TransformResult res;
  for (GrammarRule* rule : ScopedRules(g, s)) {
    std::size_t la = edit::npos;
    std::size_t lb = edit::npos;
    for (std::size_t li = 0; li < rule->lines.size(); ++li) {
      const auto& name = rule->lines[li].attr_name;
      if (name == args[0] && la == edit::npos) la = li;
      if (name == args[1] && lb == edit::npos) lb = li;
    }
    if (la == edit::npos || lb == edit::npos) {
      res.note = "attribute '" + (la == edit::npos ? args[0] : args[1]) +
                 "' not found in grammar rule '" + rule->name + "'";
      continue;
    }
    const std::size_t first = std::min(la, lb);
    const std::size_t second = std::max(la, lb);
    if (second != first + 1) {
      throw TransformError("attributes '" + args[0] + "' and '" + args[1] +
                           "' are not on adjacent lines");
    }

    struct Parts {
      std::string indent;
      std::vector<Token> assign;  // name, ?=, keyword
      std::vector<Token> suffix;  // e.g. terminating ';'
    };
    auto parse = [&](std::size_t li) {
      const LineEntry& line = rule->lines[li];
      TokenList t = line.Tokens();
      std::vector<Token> sig;
      for (std::size_t k = BodyFrom(*rule, li, t); k < t.size(); ++k) {
        if (t[k].IsSignificant()) sig.push_back(t[k]);
      }
      Parts p;
      p.indent = edit::Indentation(line.content);
      bool ok = li >= rule->HeaderLineCount() && sig.size() >= 6 &&
                sig[0].IsPunct('(') && sig[1].kind == TokenKind::kIdentifier &&
                sig[2].Is(TokenKind::kOperator, "?=") &&
                sig[3].kind == TokenKind::kString && sig[4].IsPunct(')') &&
                sig[5].IsPunct('?');
      if (ok) {
        p.assign = {sig[1], sig[2], sig[3]};
        p.suffix.assign(sig.begin() + 6, sig.end());
        ok = std::all_of(p.suffix.begin(), p.suffix.end(),
                         [](const Token& k) { return k.IsPunct(';'); });
      }
      if (!ok) {
        throw TransformError("line " + std::to_string(li + 1) + " of grammar rule '" +
                             rule->name + "' is not of the form (a?='keyword')?");
      }
      return p;
    };
    Parts a = parse(first);
    Parts b = parse(second);
    if (!a.suffix.empty()) {
      throw TransformError("grammar rule '" + rule->name +
                           "' ends between the two attributes");
    }

    auto text = [](const std::vector<Token>& ts) {
      std::string out;
      for (const auto& k : ts) out += k.text;
      return out;
    };
    std::string tail;
    for (const auto& k : b.suffix) tail += k.text;
    rule->lines[first].SetContent(a.indent + "(" + text(a.assign) + " " +
                                  text(b.assign) + "? |");
    rule->lines[second].SetContent(b.indent + text(b.assign) + " " +
                                   text(a.assign) + "?)?" + tail);
    res.Touch(rule->name, first);
    res.Touch(rule->name, second);
  }
  return res;
}

}  // namespace grammar_forge::rules

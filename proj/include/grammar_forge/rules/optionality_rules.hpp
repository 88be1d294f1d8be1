#pragma once

// Optionality and multiplicity rules: `?`, `*`, `+` on groups and
// assignments.

#include <optional>
#include <string>
#include <vector>

#include "grammar_forge/rules/common.hpp"

namespace grammar_forge::rules {

namespace detail {

inline bool IsPredicate(const TokenList& t, std::size_t open) {
  std::size_t p = edit::PrevSig(t, open);
  return p != edit::npos && (t[p].Is(TokenKind::kOperator, "=>") ||
                             t[p].Is(TokenKind::kOperator, "->"));
}

// Position of the next optional marker `?` in the body: after a group's
// closing parenthesis or after an assignment.
inline std::size_t NextOptionalMarker(const TokenList& t, std::size_t from) {
  const auto assigns = edit::FindAssignments(t, from);
  for (std::size_t i = from; i < t.size(); ++i) {
    if (!t[i].IsPunct('?')) continue;
    std::size_t p = edit::PrevSig(t, i);
    if (p == edit::npos || p < from) continue;
    if (t[p].IsPunct(')')) return i;
    for (const auto& a : assigns) {
      if (a.cardinality == i) return i;
    }
  }
  return edit::npos;
}

// The body span of a line: first significant token at/after `from` up to
// the last one, not counting a terminating ';'.
inline std::optional<std::pair<std::size_t, std::size_t>> BodySpan(
    const TokenList& t, std::size_t from) {
  std::size_t first = edit::FirstSig(t, from);
  std::size_t last = edit::LastSig(t);
  if (first == edit::npos || last == edit::npos || last < first) return std::nullopt;
  if (t[last].IsPunct(';')) last = edit::PrevSig(t, last);
  if (last == edit::npos || last < first) return std::nullopt;
  return std::make_pair(first, last);
}

inline bool Balanced(const TokenList& t, std::size_t first, std::size_t last) {
  int depth = 0;
  for (std::size_t k = first; k <= last; ++k) {
    if (edit::IsOpen(t[k]) || t[k].IsPunct('{')) ++depth;
    if (edit::IsClose(t[k]) || t[k].IsPunct('}')) {
      if (--depth < 0) return false;
    }
  }
  return depth == 0;
}

// `|` at depth zero within [first, last].
inline bool BarBetween(const TokenList& t, std::size_t first, std::size_t last) {
  int depth = 0;
  for (std::size_t k = first; k <= last; ++k) {
    if (edit::IsOpen(t[k]) || t[k].IsPunct('{')) ++depth;
    if (edit::IsClose(t[k]) || t[k].IsPunct('}')) --depth;
    if (depth == 0 && t[k].IsPunct('|')) return true;
  }
  return false;
}

inline bool IsOptionalCard(const Token& t) { return t.IsPunct('?') || t.IsPunct('*'); }

// The `x+=R ( sep x+=R )*` one-or-more-with-separator pattern starting at
// assignment `a`. Returns the index of the closing `*`.
inline std::size_t SeparatedListEnd(const TokenList& t, const edit::Assignment& a) {
  if (a.cardinality != edit::npos || t[a.op].text != "+=") return edit::npos;
  std::size_t open = edit::NextSig(t, a.rhs_end);
  if (open == edit::npos || !t[open].IsPunct('(')) return edit::npos;
  std::size_t close = edit::MatchingClose(t, open);
  if (close == edit::npos) return edit::npos;
  std::size_t star = edit::NextSig(t, close);
  if (star == edit::npos || !t[star].IsPunct('*')) return edit::npos;
  std::size_t k = edit::NextSig(t, open);
  bool saw_sep = false;
  while (k != edit::npos && k < close && t[k].kind == TokenKind::kString) {
    saw_sep = true;
    k = edit::NextSig(t, k);
  }
  if (!saw_sep || k == edit::npos || k >= close) return edit::npos;
  auto inner = edit::FindAssignments(t, k);
  if (inner.empty() || inner.front().name != k) return edit::npos;
  const auto& b = inner.front();
  if (b.cardinality != edit::npos || edit::NextSig(t, b.rhs_end) != close) {
    return edit::npos;
  }
  if (t[b.name].text != t[a.name].text || t[b.op].text != "+=" ||
      edit::CompactText(t, b.rhs_begin, b.rhs_end) !=
          edit::CompactText(t, a.rhs_begin, a.rhs_end)) {
    return edit::npos;
  }
  return star;
}

inline bool AttrSelected(const ScopeResolution& s, const std::string& name) {
  return !s.spec.attr || *s.spec.attr == name;
}

}  // namespace detail

/// Drops `?` after groups and assignments. A group that loses its `?` and
/// has no top-level alternatives is unwrapped.
inline TransformResult RemoveOptionality(Grammar& g, const ScopeResolution& s,
                                         const Args&) {
  return EditScopedLines(g, s, [](TokenList& t, std::size_t from) {
    for (std::size_t q; (q = detail::NextOptionalMarker(t, from)) != edit::npos;) {
      std::size_t close = edit::PrevSig(t, q);
      edit::EraseAt(t, q);
      if (!t[close].IsPunct(')')) continue;
      std::size_t open = edit::MatchingOpen(t, close);
      if (open == edit::npos || open < from || detail::IsPredicate(t, open)) continue;
      if (edit::HasTopLevelBar(t, open, close)) continue;
      edit::UnwrapGroup(t, open);
    }
  });
}

/// Wraps the attribute's line content, or just the assignment when the line
/// holds more than this attribute, in `( ... )?`.
inline TransformResult AddOptionalityToAttr(Grammar& g, const ScopeResolution& s,
                                            const Args&) {
  const std::string attr = s.spec.attr.value_or("");
  return EditScopedLines(g, s, [&](TokenList& t, std::size_t from) {
    auto a = edit::FindAssignment(t, attr, from);
    if (!a) return;
    auto assigns = edit::FindAssignments(t, from);
    auto span = detail::BodySpan(t, from);
    bool dedicated = span.has_value() &&
                     detail::Balanced(t, span->first, span->second) &&
                     !detail::BarBetween(t, span->first, span->second);
    for (const auto& other : assigns) {
      dedicated = dedicated && t[other.name].text == attr;
    }

    if (a->cardinality != edit::npos && detail::IsOptionalCard(t[a->cardinality])) {
      return;
    }
    std::size_t enclosing = edit::EnclosingGroup(t, a->name);
    if (enclosing != edit::npos && enclosing >= from) {
      std::size_t c = edit::MatchingClose(t, enclosing);
      std::size_t card = c == edit::npos ? edit::npos : edit::NextSig(t, c);
      if (card != edit::npos && detail::IsOptionalCard(t[card])) return;
    }

    std::size_t first = a->name;
    std::size_t last = a->End();
    if (dedicated) {
      first = span->first;
      last = span->second;
    }
    edit::InsertAt(t, last + 1, {Punct(')'), Punct('?')});
    edit::InsertAt(t, first, {Punct('(')});
  });
}

/// Wraps each occurrence of a keyword in `( ... )?` unless already optional.
inline TransformResult AddOptionalityToKeyword(Grammar& g, const ScopeResolution& s,
                                               const Args& args) {
  RequireArg(args, 0, "keyword");
  const std::string& kw = args[0];
  return EditScopedLines(g, s, [&](TokenList& t, std::size_t from) {
    for (std::size_t i = t.size(); i-- > from;) {
      if (t[i].kind != TokenKind::kString || StringValue(t[i]) != kw) continue;
      if (edit::IsAssignedValue(t, i)) continue;
      std::size_t n = edit::NextSig(t, i);
      if (n != edit::npos && detail::IsOptionalCard(t[n])) continue;
      std::size_t p = edit::PrevSig(t, i);
      if (p != edit::npos && t[p].IsPunct('(') && n != edit::npos &&
          t[n].IsPunct(')')) {
        std::size_t card = edit::NextSig(t, n);
        if (card != edit::npos && detail::IsOptionalCard(t[card])) continue;
      }
      edit::InsertAt(t, i + 1, {Punct(')'), Punct('?')});
      edit::InsertAt(t, i, {Punct('(')});
    }
  });
}

/// Makes the container braces of a rule and everything between them one
/// optional group. Requires every attribute between the braces to be
/// optional already.
inline TransformResult MakeBodyOptional(Grammar& g, const ScopeResolution& s,
                                        const Args&) {
  TransformResult res;
  for (GrammarRule* rule : ScopedRules(g, s)) {
    struct Pos {
      std::size_t line, tok;
    };
    std::vector<TokenList> lines;
    std::vector<Pos> flat;
    for (std::size_t li = 0; li < rule->lines.size(); ++li) {
      lines.push_back(rule->lines[li].Tokens());
      for (std::size_t k = BodyFrom(*rule, li, lines[li]); k < lines[li].size(); ++k) {
        if (lines[li][k].IsSignificant()) flat.push_back({li, k});
      }
    }
    auto tok = [&](std::size_t f) -> const Token& {
      return lines[flat[f].line][flat[f].tok];
    };
    auto is_brace = [&](std::size_t f, const char* v) {
      return tok(f).kind == TokenKind::kString && StringValue(tok(f)) == v &&
             !(f > 0 && tok(f - 1).IsAssignOp());
    };
    std::size_t open = edit::npos;
    std::size_t close = edit::npos;
    for (std::size_t f = 0; f < flat.size(); ++f) {
      if (open == edit::npos && is_brace(f, "{")) open = f;
      if (is_brace(f, "}")) close = f;
    }
    if (open == edit::npos || close == edit::npos || close < open) {
      res.note = "grammar rule '" + rule->name + "' has no container braces";
      continue;
    }
    if (open > 0 && tok(open - 1).IsPunct('(') && close + 1 < flat.size() &&
        tok(close + 1).IsPunct(')')) {
      continue;  // already wrapped
    }

    // Optional-ness of every assignment between the braces.
    std::vector<std::size_t> stack;  // open-paren flat positions
    std::vector<std::size_t> match(flat.size(), edit::npos);
    for (std::size_t f = 0; f < flat.size(); ++f) {
      if (tok(f).IsPunct('(')) stack.push_back(f);
      if (tok(f).IsPunct(')') && !stack.empty()) {
        match[stack.back()] = f;
        stack.pop_back();
      }
    }
    auto optional_group = [&](std::size_t o) {
      std::size_t c = match[o];
      return c != edit::npos && c + 1 < flat.size() &&
             detail::IsOptionalCard(tok(c + 1));
    };
    for (std::size_t f = open + 1; f < close; ++f) {
      if (tok(f).kind != TokenKind::kIdentifier || f + 1 >= flat.size() ||
          !tok(f + 1).IsAssignOp()) {
        continue;
      }
      bool optional = false;
      for (std::size_t o = open + 1; o < f && !optional; ++o) {
        optional = tok(o).IsPunct('(') && match[o] != edit::npos && match[o] > f &&
                   optional_group(o);
      }
      if (!optional) {
        // Direct cardinality on the assignment's rhs.
        const TokenList& lt = lines[flat[f].line];
        auto a = edit::FindAssignment(lt, tok(f).text, flat[f].tok);
        optional = a && a->name == flat[f].tok && a->cardinality != edit::npos &&
                   detail::IsOptionalCard(lt[a->cardinality]);
      }
      if (!optional) {
        throw TransformError("attribute '" + tok(f).text + "' in grammar rule '" +
                             rule->name + "' is mandatory");
      }
    }

    Pos o = flat[open];
    Pos c = flat[close];
    edit::InsertAt(lines[c.line], c.tok + 1, {Ws(), Punct(')'), Punct('?')});
    edit::InsertAt(lines[o.line], o.tok, {Punct('('), Ws()});
    rule->lines[o.line].SetTokens(lines[o.line]);
    res.Touch(rule->name, o.line);
    if (c.line != o.line) {
      rule->lines[c.line].SetTokens(lines[c.line]);
      res.Touch(rule->name, c.line);
    }
  }
  return res;
}

/// Collapses `a+=X ( sep a+=X )*` into `(a+=X)*`.
inline TransformResult Convert1toStarToStar(Grammar& g, const ScopeResolution& s,
                                            const Args&) {
  return EditScopedLines(g, s, [&](TokenList& t, std::size_t from) {
    for (bool again = true; again;) {
      again = false;
      for (const auto& a : edit::FindAssignments(t, from)) {
        if (!detail::AttrSelected(s, t[a.name].text)) continue;
        std::size_t star = detail::SeparatedListEnd(t, a);
        if (star == edit::npos) continue;
        std::vector<Token> repl{Punct('(')};
        for (std::size_t k = a.name; k <= a.rhs_end; ++k) {
          if (t[k].IsSignificant()) repl.push_back(t[k]);
        }
        repl.push_back(Punct(')'));
        repl.push_back(Punct('*'));
        t.erase(t.begin() + static_cast<std::ptrdiff_t>(a.name),
                t.begin() + static_cast<std::ptrdiff_t>(star + 1));
        edit::InsertAt(t, a.name, repl);
        again = true;
        break;
      }
    }
  });
}

enum class Multiplicity { kExactlyOne, kOptional, kStar, kPlus };

inline Multiplicity ParseMultiplicity(const std::string& v) {
  if (v == "optional") return Multiplicity::kOptional;
  if (v == "exactly-one") return Multiplicity::kExactlyOne;
  if (v == "star") return Multiplicity::kStar;
  if (v == "plus") return Multiplicity::kPlus;
  throw TransformError("multiplicity must be one of optional, exactly-one, star, "
                       "plus; got '" + v + "'");
}

/// Rewrites the attribute's element to `a=X`, `(a=X)?`, `(a+=X)*` or
/// `(a+=X)+`. The element is the same-line group holding the assignment
/// when that group contains no other assignment, else the assignment.
inline TransformResult ChangeMultiplicity(Grammar& g, const ScopeResolution& s,
                                          const Args& args) {
  RequireArg(args, 0, "target multiplicity");
  const Multiplicity target = ParseMultiplicity(args[0]);
  const std::string attr = s.spec.attr.value_or("");
  return EditScopedLines(g, s, [&](TokenList& t, std::size_t from) {
    auto a = edit::FindAssignment(t, attr, from);
    if (!a) return;
    if (t[a->op].text == "?=" &&
        (target == Multiplicity::kStar || target == Multiplicity::kPlus)) {
      throw TransformError("boolean attribute '" + attr +
                           "' cannot take a repeating multiplicity");
    }

    std::size_t first = a->name;
    std::size_t last = a->End();
    std::size_t inner_first = a->name;
    std::size_t inner_last = a->rhs_end;
    Multiplicity current = Multiplicity::kExactlyOne;
    if (std::size_t star = detail::SeparatedListEnd(t, *a); star != edit::npos) {
      last = star;
      current = Multiplicity::kPlus;
    } else {
      std::size_t open = edit::EnclosingGroup(t, a->name);
      std::size_t close = open == edit::npos ? edit::npos : edit::MatchingClose(t, open);
      bool group_element = open != edit::npos && open >= from && close != edit::npos &&
                           !edit::HasTopLevelBar(t, open, close) &&
                           a->cardinality == edit::npos &&
                           !detail::IsPredicate(t, open);
      if (group_element) {
        for (const auto& other : edit::FindAssignments(t, open + 1)) {
          if (other.name < close && other.name != a->name) group_element = false;
        }
      }
      std::size_t card = a->cardinality;
      if (group_element) {
        first = open;
        last = close;
        inner_first = edit::NextSig(t, open);
        inner_last = edit::PrevSig(t, close);
        card = edit::NextSig(t, close);
        if (card != edit::npos && t[card].IsCardinality()) {
          last = card;
        } else {
          card = edit::npos;
        }
      }
      if (card != edit::npos) {
        current = t[card].IsPunct('?')   ? Multiplicity::kOptional
                  : t[card].IsPunct('*') ? Multiplicity::kStar
                                         : Multiplicity::kPlus;
      }
    }
    if (current == target) return;

    std::vector<Token> inner = edit::Slice(t, inner_first, inner_last);
    if (target == Multiplicity::kStar || target == Multiplicity::kPlus) {
      for (std::size_t k = 0; k < inner.size(); ++k) {
        if (!inner[k].Is(TokenKind::kOperator, "=")) continue;
        std::size_t p = edit::PrevSig(inner, k);
        if (p != edit::npos && inner[p].text == attr) inner[k].text = "+=";
      }
    }
    std::vector<Token> repl;
    if (target == Multiplicity::kExactlyOne) {
      TokenList probe{Punct('(')};
      probe.insert(probe.end(), inner.begin(), inner.end());
      probe.push_back(Punct(')'));
      bool bar = edit::HasTopLevelBar(probe, 0, probe.size() - 1);
      if (bar) repl.push_back(Punct('('));
      repl.insert(repl.end(), inner.begin(), inner.end());
      if (bar) repl.push_back(Punct(')'));
    } else {
      repl.push_back(Punct('('));
      repl.insert(repl.end(), inner.begin(), inner.end());
      repl.push_back(Punct(')'));
      repl.push_back(Punct(target == Multiplicity::kOptional ? '?'
                           : target == Multiplicity::kStar   ? '*'
                                                             : '+'));
    }
    t.erase(t.begin() + static_cast<std::ptrdiff_t>(first),
            t.begin() + static_cast<std::ptrdiff_t>(last + 1));
    edit::InsertAt(t, first, repl);
  });
}

}  // namespace grammar_forge::rules

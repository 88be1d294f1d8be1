#pragma once

// Token-level editing primitives used by the optimization rules. All of
// them operate on one tokenized line and keep whitespace tidy so that
// deleting a token does not leave double spaces or stray trailing blanks.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "grammar_forge/lexer.hpp"

namespace grammar_forge::edit {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

inline std::size_t NextSig(const TokenList& t, std::size_t i) {
  for (std::size_t k = i + 1; k < t.size(); ++k) {
    if (t[k].IsSignificant()) return k;
  }
  return npos;
}

inline std::size_t PrevSig(const TokenList& t, std::size_t i) {
  for (std::size_t k = i; k-- > 0;) {
    if (t[k].IsSignificant()) return k;
  }
  return npos;
}

inline std::size_t FirstSig(const TokenList& t, std::size_t from = 0) {
  for (std::size_t k = from; k < t.size(); ++k) {
    if (t[k].IsSignificant()) return k;
  }
  return npos;
}

inline std::size_t LastSig(const TokenList& t) {
  return PrevSig(t, t.size());
}

inline bool IsOpen(const Token& t) { return t.IsPunct('(') || t.IsPunct('['); }
inline bool IsClose(const Token& t) { return t.IsPunct(')') || t.IsPunct(']'); }

/// Index of the bracket closing the one opened at `open`, or npos when it
/// is not closed on this line. Works for (), [] and {}.
inline std::size_t MatchingClose(const TokenList& t, std::size_t open) {
  const char o = t[open].text[0];
  const char c = o == '(' ? ')' : o == '[' ? ']' : '}';
  int depth = 0;
  for (std::size_t k = open; k < t.size(); ++k) {
    if (t[k].IsPunct(o)) ++depth;
    if (t[k].IsPunct(c) && --depth == 0) return k;
  }
  return npos;
}

inline std::size_t MatchingOpen(const TokenList& t, std::size_t close) {
  const char c = t[close].text[0];
  const char o = c == ')' ? '(' : c == ']' ? '[' : '{';
  int depth = 0;
  for (std::size_t k = close + 1; k-- > 0;) {
    if (t[k].IsPunct(c)) ++depth;
    if (t[k].IsPunct(o) && --depth == 0) return k;
  }
  return npos;
}

/// Innermost same-line group `( ... )` enclosing position `i`, as the index
/// of its opening parenthesis.
inline std::size_t EnclosingGroup(const TokenList& t, std::size_t i) {
  int depth = 0;
  for (std::size_t k = i; k-- > 0;) {
    if (t[k].IsPunct(')')) ++depth;
    if (t[k].IsPunct('(')) {
      if (depth == 0) return k;
      --depth;
    }
  }
  return npos;
}

/// True when `| ` occurs at nesting depth zero strictly between the two
/// positions.
inline bool HasTopLevelBar(const TokenList& t, std::size_t open, std::size_t close) {
  int depth = 0;
  for (std::size_t k = open + 1; k < close; ++k) {
    if (IsOpen(t[k]) || t[k].IsPunct('{')) ++depth;
    if (IsClose(t[k]) || t[k].IsPunct('}')) --depth;
    if (depth == 0 && t[k].IsPunct('|')) return true;
  }
  return false;
}

/// Depth of `{ }` semantic-action nesting at position `i`.
inline int ActionDepth(const TokenList& t, std::size_t i) {
  int depth = 0;
  for (std::size_t k = 0; k < i && k < t.size(); ++k) {
    if (t[k].IsPunct('{')) ++depth;
    if (t[k].IsPunct('}') && depth > 0) --depth;
  }
  return depth;
}

/// The token at `i` is the right-hand side of an assignment (`x='k'`).
inline bool IsAssignedValue(const TokenList& t, std::size_t i) {
  std::size_t p = PrevSig(t, i);
  return p != npos && t[p].IsAssignOp();
}

/// Whitespace cleanup around the gap left at position `p` after erasing.
inline void MendGap(TokenList& t, std::size_t p) {
  const bool has_prev = p > 0;
  const bool has_next = p < t.size();
  const bool prev_ws = has_prev && t[p - 1].kind == TokenKind::kWhitespace;
  const bool next_ws = has_next && t[p].kind == TokenKind::kWhitespace;
  if (prev_ws && next_ws) {
    const bool tight = (p > 1 && IsOpen(t[p - 2])) || (p + 1 < t.size() && IsClose(t[p + 1]));
    t.erase(t.begin() + static_cast<std::ptrdiff_t>(p));
    if (tight) t.erase(t.begin() + static_cast<std::ptrdiff_t>(p - 1));
  } else if (next_ws && !has_prev) {
    t.erase(t.begin());
  } else if (prev_ws && !has_next && p - 1 > 0) {
    t.erase(t.begin() + static_cast<std::ptrdiff_t>(p - 1));
  } else if (next_ws && has_prev && IsOpen(t[p - 1])) {
    t.erase(t.begin() + static_cast<std::ptrdiff_t>(p));
  } else if (prev_ws && has_next && IsClose(t[p]) && p - 1 > 0 &&
             !IsOpen(t[p - 2])) {
    t.erase(t.begin() + static_cast<std::ptrdiff_t>(p - 1));
  }
}

/// Erases tokens [first, last] and mends the surrounding whitespace.
inline void EraseRange(TokenList& t, std::size_t first, std::size_t last) {
  t.erase(t.begin() + static_cast<std::ptrdiff_t>(first),
          t.begin() + static_cast<std::ptrdiff_t>(last + 1));
  MendGap(t, first);
}

inline void EraseAt(TokenList& t, std::size_t i) { EraseRange(t, i, i); }

inline void InsertAt(TokenList& t, std::size_t i, std::vector<Token> tokens) {
  t.insert(t.begin() + static_cast<std::ptrdiff_t>(i), tokens.begin(),
           tokens.end());
}

/// Removes the parentheses of the group opened at `open` (its closing
/// parenthesis must be on the same line).
inline void UnwrapGroup(TokenList& t, std::size_t open) {
  std::size_t close = MatchingClose(t, open);
  EraseAt(t, close);
  EraseAt(t, open);
}

/// Removes leftovers of deletions: empty groups `()` with their
/// cardinality, and alternative bars that no longer separate anything.
/// Returns true when something was removed.
inline bool Tidy(TokenList& t) {
  bool any = false;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < t.size() && !changed; ++i) {
      if (!t[i].IsSignificant()) continue;
      std::size_t n = NextSig(t, i);
      if (t[i].IsPunct('(') && n != npos && t[n].IsPunct(')')) {
        std::size_t last = n;
        std::size_t c = NextSig(t, n);
        if (c != npos && t[c].IsCardinality()) last = c;
        EraseRange(t, i, last);
        changed = true;
      } else if (t[i].IsPunct('|')) {
        std::size_t p = PrevSig(t, i);
        bool dangling = (p != npos && (t[p].IsPunct('(') || t[p].IsPunct('|'))) ||
                        (n != npos && t[n].IsPunct(')'));
        if (dangling) {
          EraseAt(t, i);
          changed = true;
        }
      }
    }
    any = any || changed;
  }
  return any;
}

/// One assignment `attr op rhs` found on a line.
struct Assignment {
  std::size_t name = npos;
  std::size_t op = npos;
  std::size_t rhs_begin = npos;
  std::size_t rhs_end = npos;  // inclusive, before any cardinality
  std::size_t cardinality = npos;  // `?`, `*` or `+` right after the rhs

  // Last token of the assignment including its cardinality.
  std::size_t End() const { return cardinality != npos ? cardinality : rhs_end; }
};

/// All assignments on a line outside semantic actions, left to right.
/// `from` skips a header prefix.
inline std::vector<Assignment> FindAssignments(const TokenList& t,
                                               std::size_t from = 0) {
  std::vector<Assignment> out;
  int action = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i].IsPunct('{')) ++action;
    if (t[i].IsPunct('}') && action > 0) --action;
    if (i < from || action > 0 || t[i].kind != TokenKind::kIdentifier) continue;
    std::size_t op = NextSig(t, i);
    if (op == npos || !t[op].IsAssignOp()) continue;
    std::size_t r = NextSig(t, op);
    if (r == npos) continue;
    Assignment a{i, op, r, r, npos};
    if (t[r].IsPunct('(') || t[r].IsPunct('[')) {
      std::size_t c = MatchingClose(t, r);
      if (c == npos) continue;
      a.rhs_end = c;
    } else if (t[r].kind == TokenKind::kIdentifier) {
      std::size_t k = r;
      for (;;) {
        std::size_t sep = NextSig(t, k);
        if (sep == npos) break;
        if (!(t[sep].Is(TokenKind::kOperator, "::") || t[sep].IsPunct('.'))) break;
        std::size_t nxt = NextSig(t, sep);
        if (nxt == npos || t[nxt].kind != TokenKind::kIdentifier) break;
        k = nxt;
      }
      a.rhs_end = k;
    } else if (t[r].kind != TokenKind::kString) {
      continue;
    }
    std::size_t c = NextSig(t, a.rhs_end);
    if (c != npos && t[c].IsCardinality()) a.cardinality = c;
    out.push_back(a);
    i = a.rhs_end;
  }
  return out;
}

inline std::optional<Assignment> FindAssignment(const TokenList& t,
                                                const std::string& attr,
                                                std::size_t from = 0) {
  for (const auto& a : FindAssignments(t, from)) {
    if (t[a.name].text == attr) return a;
  }
  return std::nullopt;
}

/// Copy of tokens [first, last] without whitespace/comments, joined into a
/// compact canonical text such as `attrLists+=AttrList`.
inline std::string CompactText(const TokenList& t, std::size_t first,
                               std::size_t last) {
  std::string s;
  for (std::size_t k = first; k <= last && k < t.size(); ++k) {
    if (t[k].IsSignificant()) s += t[k].text;
  }
  return s;
}

inline std::vector<Token> Slice(const TokenList& t, std::size_t first,
                                std::size_t last) {
  return {t.begin() + static_cast<std::ptrdiff_t>(first),
          t.begin() + static_cast<std::ptrdiff_t>(last + 1)};
}

/// Leading whitespace of a line.
inline std::string Indentation(const std::string& line) {
  auto p = line.find_first_not_of(" \t");
  return p == std::string::npos ? line : line.substr(0, p);
}

}  // namespace grammar_forge::edit

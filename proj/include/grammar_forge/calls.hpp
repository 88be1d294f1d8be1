#pragma once

#include <string>
#include <vector>

#include "grammar_forge/grammar.hpp"
#include "grammar_forge/token_edit.hpp"

namespace grammar_forge {

/// A reference from a rule body to another rule: the right-hand side of an
/// assignment, a bare rule invocation, or a name inside a cross-reference.
struct CallSite {
  std::size_t token;  // index of the first identifier
  std::size_t last;   // index of the last identifier of a qualified name
  std::string name;   // possibly qualified, e.g. ecore::EString
};

/// Call sites on one tokenized line. `from` skips the rule header prefix.
/// Enum rule bodies contain literals, not calls.
inline std::vector<CallSite> FindCallSites(const TokenList& t, std::size_t from,
                                           RuleKind kind = RuleKind::kParser) {
  std::vector<CallSite> out;
  if (kind == RuleKind::kEnum) return out;
  int action = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i].IsPunct('{')) ++action;
    if (t[i].IsPunct('}') && action > 0) --action;
    if (i < from || action > 0 || t[i].kind != TokenKind::kIdentifier) continue;
    const std::string& w = t[i].text;
    if (w == "current" || w == "returns" || w == "EOF" || w == "hidden") continue;
    std::size_t p = edit::PrevSig(t, i);
    if (p != edit::npos &&
        (t[p].Is(TokenKind::kOperator, "::") || t[p].IsPunct('.'))) {
      continue;
    }
    std::size_t n = edit::NextSig(t, i);
    if (n != edit::npos && t[n].IsAssignOp()) continue;
    CallSite cs{i, i, w};
    while (n != edit::npos &&
           (t[n].Is(TokenKind::kOperator, "::") || t[n].IsPunct('.'))) {
      std::size_t id = edit::NextSig(t, n);
      if (id == edit::npos || t[id].kind != TokenKind::kIdentifier) break;
      cs.name += t[n].text + t[id].text;
      cs.last = id;
      n = edit::NextSig(t, id);
    }
    out.push_back(cs);
  }
  return out;
}

/// Index of the first body token on line `li` of `rule`: tokens of the
/// header up to and including ':' are not part of the body.
inline std::size_t BodyFrom(const GrammarRule& rule, std::size_t li,
                            const TokenList& tokens) {
  auto [colon_line, colon_tok] = rule.Colon();
  if (li < colon_line) return tokens.size();
  if (li == colon_line) return colon_tok + 1;
  return 0;
}

}  // namespace grammar_forge

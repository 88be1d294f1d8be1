#pragma once

// Structural comparison of grammars: rule and line level change counts,
// dangling rule calls, and a token-level imitation check against a
// reference grammar.

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "grammar_forge/calls.hpp"
#include "grammar_forge/grammar.hpp"

namespace grammar_forge {

enum class ChangeKind { kModified, kAdded, kDeleted };

inline const char* ToString(ChangeKind k) {
  switch (k) {
    case ChangeKind::kModified: return "modified";
    case ChangeKind::kAdded: return "added";
    case ChangeKind::kDeleted: return "deleted";
  }
  return "?";
}

struct RuleDiff {
  std::string name;       // name in the newer grammar, if present
  std::string old_name;   // name in the older grammar, if present
  ChangeKind kind = ChangeKind::kModified;
  std::vector<std::pair<std::string, std::string>> modified_lines;  // (old, new)
  std::vector<std::string> added_lines;
  std::vector<std::string> deleted_lines;
};

struct DanglingCall {
  std::string rule;
  std::string called;
  bool operator==(const DanglingCall&) const = default;
};

struct DiffReport {
  std::vector<RuleDiff> per_rule;  // only rules that changed
  std::size_t rules_modified = 0, rules_added = 0, rules_deleted = 0;
  std::size_t lines_modified = 0, lines_added = 0, lines_deleted = 0;
  std::size_t imports_added = 0, imports_deleted = 0;
  std::vector<DanglingCall> dangling_calls;

  bool Empty() const {
    return per_rule.empty() && imports_added == 0 && imports_deleted == 0;
  }
};

namespace detail {

/// Trimmed line with inner whitespace runs collapsed to one space.
inline std::string NormalizeSpace(const std::string& s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

inline std::vector<std::string> NonBlankLines(const GrammarRule& rule) {
  std::vector<std::string> out;
  for (const auto& l : rule.lines) {
    if (!l.IsBlank()) out.push_back(l.content);
  }
  return out;
}

/// Index pairs of a longest common subsequence of `a` and `b`.
template <class T>
std::vector<std::pair<std::size_t, std::size_t>> Lcs(const std::vector<T>& a,
                                                     const std::vector<T>& b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::vector<std::vector<std::size_t>> f(n + 1, std::vector<std::size_t>(m + 1, 0));
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      f[i][j] = a[i] == b[j] ? f[i + 1][j + 1] + 1 : std::max(f[i + 1][j], f[i][j + 1]);
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < n && j < m) {
    if (a[i] == b[j]) {
      out.emplace_back(i++, j++);
    } else if (f[i + 1][j] >= f[i][j + 1]) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

inline double Jaccard(const std::string& x, const std::string& y) {
  std::set<std::string> a;
  std::set<std::string> b;
  for (const auto& t : Tokenize(x)) {
    if (t.IsSignificant()) a.insert(t.text);
  }
  for (const auto& t : Tokenize(y)) {
    if (t.IsSignificant()) b.insert(t.text);
  }
  if (a.empty() && b.empty()) return 1.0;
  std::size_t common = 0;
  for (const auto& s : a) common += b.count(s);
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

/// Pairs every line of the shorter side with a line of the longer side,
/// keeping order and maximizing total token-set similarity.
inline std::vector<std::pair<std::size_t, std::size_t>> PairHunk(
    const std::vector<std::string>& del, const std::vector<std::string>& add) {
  const bool swap = del.size() > add.size();
  const auto& s = swap ? add : del;   // shorter
  const auto& l = swap ? del : add;   // longer
  const std::size_t n = s.size();
  const std::size_t m = l.size();
  std::vector<std::vector<double>> f(n + 1, std::vector<double>(m + 1, 0.0));
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      if (m - j < n - i) continue;
      double take = Jaccard(s[i], l[j]) + f[i + 1][j + 1];
      f[i][j] = m - j > n - i ? std::max(take, f[i][j + 1]) : take;
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < n) {
    double take = Jaccard(s[i], l[j]) + f[i + 1][j + 1];
    if (m - j == n - i || take >= f[i][j + 1]) {
      out.push_back(swap ? std::make_pair(j, i) : std::make_pair(i, j));
      ++i;
    }
    ++j;
  }
  return out;
}

inline void DiffLines(const std::vector<std::string>& before,
                      const std::vector<std::string>& after, RuleDiff& rd) {
  std::vector<std::string> nb;
  std::vector<std::string> na;
  for (const auto& s : before) nb.push_back(NormalizeSpace(s));
  for (const auto& s : after) na.push_back(NormalizeSpace(s));
  auto common = Lcs(nb, na);
  common.emplace_back(nb.size(), na.size());  // sentinel
  std::size_t i = 0;
  std::size_t j = 0;
  for (auto [ci, cj] : common) {
    std::vector<std::string> del(nb.begin() + static_cast<std::ptrdiff_t>(i),
                                 nb.begin() + static_cast<std::ptrdiff_t>(ci));
    std::vector<std::string> add(na.begin() + static_cast<std::ptrdiff_t>(j),
                                 na.begin() + static_cast<std::ptrdiff_t>(cj));
    auto pairs = PairHunk(del, add);
    std::set<std::size_t> pd;
    std::set<std::size_t> pa;
    for (auto [x, y] : pairs) {
      rd.modified_lines.emplace_back(del[x], add[y]);
      pd.insert(x);
      pa.insert(y);
    }
    for (std::size_t k = 0; k < del.size(); ++k) {
      if (!pd.count(k)) rd.deleted_lines.push_back(del[k]);
    }
    for (std::size_t k = 0; k < add.size(); ++k) {
      if (!pa.count(k)) rd.added_lines.push_back(add[k]);
    }
    i = ci + 1;
    j = cj + 1;
  }
}

inline bool IsBuiltinTerminal(const std::string& name) {
  static const std::set<std::string> kBuiltin = {
      "ID", "STRING", "INT", "ML_COMMENT", "SL_COMMENT", "WS", "ANY_OTHER"};
  return kBuiltin.count(name) != 0;
}

}  // namespace detail

/// Call sites in `g` naming no rule of `g`. Qualified names (imported
/// types) and the common terminals are not reported.
inline std::vector<DanglingCall> FindDanglingCalls(const Grammar& g) {
  std::vector<DanglingCall> out;
  for (const auto& rule : g.rules) {
    for (std::size_t li = 0; li < rule.lines.size(); ++li) {
      TokenList t = rule.lines[li].Tokens();
      for (const auto& cs : FindCallSites(t, BodyFrom(rule, li, t), rule.kind)) {
        if (cs.token != cs.last || detail::IsBuiltinTerminal(cs.name)) continue;
        if (g.FindRule(cs.name) == nullptr) out.push_back({rule.name, cs.name});
      }
    }
  }
  return out;
}

/// Compares two grammars. Rules pair up by name; `renames` lists (from, to)
/// renames performed between the two, applied in order.
inline DiffReport DiffGrammars(
    const Grammar& before, const Grammar& after,
    const std::vector<std::pair<std::string, std::string>>& renames = {}) {
  DiffReport r;
  std::map<std::string, std::string> new_name;  // before name -> after name
  for (const auto& rule : before.rules) {
    std::string n = rule.name;
    for (const auto& [from, to] : renames) {
      if (n == from) n = to;
    }
    new_name[rule.name] = n;
  }
  std::set<std::string> claimed;
  for (const auto& rule : before.rules) {
    const std::string& target = new_name[rule.name];
    const GrammarRule* other = after.FindRule(target);
    RuleDiff rd;
    rd.old_name = rule.name;
    if (other == nullptr || claimed.count(target)) {
      rd.kind = ChangeKind::kDeleted;
      rd.deleted_lines = detail::NonBlankLines(rule);
      r.per_rule.push_back(std::move(rd));
      continue;
    }
    claimed.insert(target);
    rd.name = target;
    detail::DiffLines(detail::NonBlankLines(rule), detail::NonBlankLines(*other), rd);
    if (!rd.modified_lines.empty() || !rd.added_lines.empty() ||
        !rd.deleted_lines.empty()) {
      r.per_rule.push_back(std::move(rd));
    }
  }
  for (const auto& rule : after.rules) {
    if (claimed.count(rule.name)) continue;
    RuleDiff rd;
    rd.name = rule.name;
    rd.kind = ChangeKind::kAdded;
    rd.added_lines = detail::NonBlankLines(rule);
    r.per_rule.push_back(std::move(rd));
  }
  for (const auto& rd : r.per_rule) {
    switch (rd.kind) {
      case ChangeKind::kModified: ++r.rules_modified; break;
      case ChangeKind::kAdded: ++r.rules_added; break;
      case ChangeKind::kDeleted: ++r.rules_deleted; break;
    }
    r.lines_modified += rd.modified_lines.size();
    r.lines_added += rd.added_lines.size();
    r.lines_deleted += rd.deleted_lines.size();
  }
  std::set<std::string> old_uris;
  std::set<std::string> new_uris;
  for (const auto& i : before.imports) old_uris.insert(i.uri);
  for (const auto& i : after.imports) new_uris.insert(i.uri);
  for (const auto& u : old_uris) r.imports_deleted += new_uris.count(u) ? 0 : 1;
  for (const auto& u : new_uris) r.imports_added += old_uris.count(u) ? 0 : 1;
  r.dangling_calls = FindDanglingCalls(after);
  return r;
}

// --- imitation proxy -------------------------------------------------------

struct ImitationMatch {
  std::string reference_rule;
  std::vector<std::string> optimized_rules;
};

struct ImitationReport {
  std::vector<ImitationMatch> matched;
  std::vector<std::string> unmatched;
};

namespace detail {

inline std::string NormalizeName(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c != '_') out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

using Seq = std::vector<std::string>;

/// Body tokens of a rule reduced to what shapes the language: actions,
/// assignment prefixes and cross-reference payloads are dropped, names are
/// case- and underscore-insensitive, keywords compare by value.
inline Seq ReducedBody(const GrammarRule& rule) {
  TokenList all;
  for (std::size_t li = 0; li < rule.lines.size(); ++li) {
    TokenList t = rule.lines[li].Tokens();
    for (std::size_t k = BodyFrom(rule, li, t); k < t.size(); ++k) {
      if (t[k].IsSignificant()) all.push_back(t[k]);
    }
  }
  if (!all.empty() && all.back().IsPunct(';')) all.pop_back();
  Seq out;
  int action = 0;
  for (std::size_t k = 0; k < all.size(); ++k) {
    const Token& tk = all[k];
    if (tk.IsPunct('{')) ++action;
    if (action > 0) {
      if (tk.IsPunct('}')) --action;
      continue;
    }
    if (tk.kind == TokenKind::kIdentifier && k + 1 < all.size() &&
        all[k + 1].IsAssignOp()) {
      ++k;
      continue;
    }
    if (tk.IsPunct('[')) {
      // [Type|Terminal] or [Type] -> type
      std::size_t e = k + 1;
      while (e < all.size() && !all[e].IsPunct(']')) ++e;
      if (k + 1 < e) out.push_back(NormalizeName(all[k + 1].text));
      k = e;
      continue;
    }
    if (tk.kind == TokenKind::kIdentifier) {
      out.push_back(NormalizeName(tk.text));
    } else if (tk.kind == TokenKind::kString) {
      out.push_back("'" + StringValue(tk) + "'");
    } else {
      out.push_back(tk.text);
    }
  }
  // (x) -> x
  for (bool again = true; again;) {
    again = false;
    for (std::size_t k = 0; k + 2 < out.size(); ++k) {
      if (out[k] == "(" && out[k + 2] == ")" && out[k + 1] != "(" && out[k + 1] != ")" &&
          out[k + 1] != "|") {
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(k + 2));
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(k));
        again = true;
        break;
      }
    }
  }
  return out;
}

inline bool IsPostfix(const std::string& s) { return s == "?" || s == "*" || s == "+"; }

/// Splits a sequence into the sequences of its alternatives: top-level
/// `|` and groups without a postfix operator. Stops growing at `cap`.
inline std::set<Seq> Expand(const Seq& seq, std::size_t cap = 256) {
  // top-level alternatives
  std::vector<Seq> branches(1);
  int depth = 0;
  for (const auto& s : seq) {
    if (s == "(") ++depth;
    if (s == ")") --depth;
    if (depth == 0 && s == "|") {
      branches.emplace_back();
      continue;
    }
    branches.back().push_back(s);
  }
  std::set<Seq> out;
  for (const auto& b : branches) {
    // first top-level group with no postfix operator
    std::size_t open = b.size();
    std::size_t close = b.size();
    for (std::size_t k = 0; k < b.size() && close == b.size(); ++k) {
      if (b[k] != "(") continue;
      int d = 0;
      std::size_t c = k;
      for (; c < b.size(); ++c) {
        if (b[c] == "(") ++d;
        if (b[c] == ")" && --d == 0) break;
      }
      if (c == b.size()) break;
      if (c + 1 == b.size() || !IsPostfix(b[c + 1])) {
        open = k;
        close = c;
      }
      k = c;
    }
    if (close == b.size() || out.size() >= cap) {
      out.insert(b);
      continue;
    }
    Seq inner(b.begin() + static_cast<std::ptrdiff_t>(open + 1),
              b.begin() + static_cast<std::ptrdiff_t>(close));
    for (const auto& alt : Expand(inner, cap)) {
      Seq joined(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(open));
      joined.insert(joined.end(), alt.begin(), alt.end());
      joined.insert(joined.end(), b.begin() + static_cast<std::ptrdiff_t>(close + 1),
                    b.end());
      for (const auto& e : Expand(joined, cap)) {
        if (out.size() >= cap) break;
        out.insert(e);
      }
    }
  }
  return out;
}

}  // namespace detail

/// Token-level structural check: a reference rule counts as imitated when
/// the optimized rule of the same normalized name, or the optimized rules
/// whose normalized names extend it, produce exactly the same alternative
/// sequences. This is a proxy; it does not decide language equality.
inline ImitationReport MatchAgainstReference(const Grammar& reference,
                                             const Grammar& optimized) {
  std::vector<std::pair<std::string, std::set<detail::Seq>>> opt;
  for (const auto& rule : optimized.rules) {
    opt.emplace_back(rule.name, detail::Expand(detail::ReducedBody(rule)));
  }
  ImitationReport rep;
  for (const auto& ref : reference.rules) {
    const std::string key = detail::NormalizeName(ref.name);
    const auto want = detail::Expand(detail::ReducedBody(ref));
    std::vector<std::string> found;
    for (const auto& [name, seqs] : opt) {
      if (detail::NormalizeName(name) == key && seqs == want) found = {name};
    }
    if (found.empty()) {
      std::set<detail::Seq> uni;
      std::vector<std::string> names;
      for (const auto& [name, seqs] : opt) {
        const std::string n = detail::NormalizeName(name);
        if (n.size() > key.size() && n.compare(0, key.size(), key) == 0) {
          uni.insert(seqs.begin(), seqs.end());
          names.push_back(name);
        }
      }
      if (!names.empty() && uni == want) found = names;
    }
    if (found.empty()) {
      rep.unmatched.push_back(ref.name);
    } else {
      rep.matched.push_back({ref.name, found});
    }
  }
  return rep;
}

}  // namespace grammar_forge

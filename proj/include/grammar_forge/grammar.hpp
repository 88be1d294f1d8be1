#pragma once

// Line-oriented document model of an Xtext grammar.
//
// A Grammar keeps the raw header, the import declarations and the ordered
// grammar rules. Each rule is a list of LineEntry values, one per physical
// source line, so that a generated grammar (one attribute per line) can be
// edited line by line and written back with its layout intact.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grammar_forge/lexer.hpp"

namespace grammar_forge {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct ImportDecl {
  std::string uri;
  std::optional<std::string> alias;
  // Verbatim source line; empty for programmatically created imports.
  std::string raw;
  // Blank and comment lines preceding the declaration.
  std::string leading;

  std::string Render() const {
    if (!raw.empty()) return raw;
    std::string s = "import \"" + uri + "\"";
    if (alias) s += " as " + *alias;
    return s;
  }

  bool operator==(const ImportDecl&) const = default;
};

/// Leftmost attribute assigned on a line (`a=`, `a+=`, `a?=`), ignoring
/// anything inside semantic actions such as `{Foo.bar=current}`.
inline std::optional<std::string> DetectAttrName(const TokenList& tokens) {
  int action_depth = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (t.IsPunct('{')) ++action_depth;
    if (t.IsPunct('}') && action_depth > 0) --action_depth;
    if (action_depth > 0 || t.kind != TokenKind::kIdentifier) continue;
    std::size_t j = i + 1;
    while (j < tokens.size() && !tokens[j].IsSignificant()) ++j;
    if (j < tokens.size() && tokens[j].IsAssignOp()) return t.text;
  }
  return std::nullopt;
}

inline std::optional<std::string> DetectAttrName(std::string_view content) {
  return DetectAttrName(Tokenize(content));
}

struct LineEntry {
  std::string content;
  std::optional<std::string> attr_name;

  LineEntry() = default;
  explicit LineEntry(std::string text)
      : content(std::move(text)), attr_name(DetectAttrName(content)) {}

  TokenList Tokens() const { return Tokenize(content); }
  void SetTokens(const TokenList& tokens) {
    content = Join(tokens);
    attr_name = DetectAttrName(tokens);
  }
  void SetContent(std::string text) {
    content = std::move(text);
    attr_name = DetectAttrName(content);
  }
  bool IsBlank() const {
    return content.find_first_not_of(" \t\r\f\v") == std::string::npos;
  }

  bool operator==(const LineEntry&) const = default;
};

enum class RuleKind { kParser, kEnum, kTerminal, kFragment };

struct GrammarRule {
  std::string name;
  RuleKind kind = RuleKind::kParser;
  std::optional<std::string> returns_type;
  std::vector<LineEntry> lines;
  // Blank and comment lines between the previous element and this rule.
  std::string leading = "\n";

  // Position of the header's terminating ':' as (line, token index).
  std::pair<std::size_t, std::size_t> Colon() const {
    for (std::size_t li = 0; li < lines.size() && li < 2; ++li) {
      TokenList toks = lines[li].Tokens();
      for (std::size_t ti = 0; ti < toks.size(); ++ti) {
        if (toks[ti].IsPunct(':')) return {li, ti};
      }
    }
    return {0, 0};
  }
  // Number of leading lines that belong to the header (1 or 2).
  std::size_t HeaderLineCount() const { return Colon().first + 1; }

  bool operator==(const GrammarRule&) const = default;
};

struct Grammar {
  std::string header_text;
  std::vector<ImportDecl> imports;
  std::vector<GrammarRule> rules;
  std::string trailing_text;

  GrammarRule* FindRule(std::string_view name) {
    for (auto& r : rules) {
      if (r.name == name) return &r;
    }
    return nullptr;
  }
  const GrammarRule* FindRule(std::string_view name) const {
    for (const auto& r : rules) {
      if (r.name == name) return &r;
    }
    return nullptr;
  }
  std::optional<std::size_t> RuleIndex(std::string_view name) const {
    for (std::size_t i = 0; i < rules.size(); ++i) {
      if (rules[i].name == name) return i;
    }
    return std::nullopt;
  }

  bool operator==(const Grammar&) const = default;
};

/// CRLF and lone CR become LF.
inline std::string NormalizeNewlines(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\r') {
      out += '\n';
      if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
    } else {
      out += text[i];
    }
  }
  return out;
}

namespace detail {

inline std::vector<std::string> SplitLines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

inline std::vector<Token> Significant(const TokenList& tokens) {
  std::vector<Token> out;
  for (const auto& t : tokens) {
    if (t.IsSignificant()) out.push_back(t);
  }
  return out;
}

struct HeaderMatch {
  std::string name;
  RuleKind kind = RuleKind::kParser;
  std::optional<std::string> returns_type;
  bool has_colon = false;
  std::size_t consumed = 0;  // significant tokens up to and including ':'
};

// Reads `QName` (Ident ('::' Ident | '.' Ident)*) starting at `i`.
inline std::optional<std::string> ReadQualifiedName(const std::vector<Token>& s,
                                                    std::size_t& i) {
  if (i >= s.size() || s[i].kind != TokenKind::kIdentifier) return std::nullopt;
  std::string q = s[i++].text;
  while (i + 1 < s.size() &&
         (s[i].Is(TokenKind::kOperator, "::") || s[i].IsPunct('.')) &&
         s[i + 1].kind == TokenKind::kIdentifier) {
    q += s[i].text + s[i + 1].text;
    i += 2;
  }
  return q;
}

// Matches `[modifiers] Name [returns QName] [hidden(...)] [':']` on the
// significant tokens of a line. Succeeds without a colon only when the
// tokens end right after the prefix (first half of a split header).
inline std::optional<HeaderMatch> MatchHeaderPrefix(const std::vector<Token>& s) {
  HeaderMatch m;
  std::size_t i = 0;
  auto is_word = [&](std::size_t k, std::string_view w) {
    return k < s.size() && s[k].Is(TokenKind::kIdentifier, w);
  };
  if (is_word(i, "enum")) {
    m.kind = RuleKind::kEnum;
    ++i;
  } else if (is_word(i, "terminal")) {
    m.kind = RuleKind::kTerminal;
    ++i;
    if (is_word(i, "fragment")) {
      m.kind = RuleKind::kFragment;
      ++i;
    }
  } else if (is_word(i, "fragment")) {
    m.kind = RuleKind::kFragment;
    ++i;
  }
  if (i >= s.size() || s[i].kind != TokenKind::kIdentifier) return std::nullopt;
  m.name = s[i++].text;
  if (m.kind == RuleKind::kParser &&
      (m.name == "grammar" || m.name == "import" || m.name == "generate")) {
    return std::nullopt;
  }
  if (is_word(i, "returns")) {
    ++i;
    auto q = ReadQualifiedName(s, i);
    if (!q) return std::nullopt;
    m.returns_type = *q;
  }
  if (is_word(i, "hidden") && i + 1 < s.size() && s[i + 1].IsPunct('(')) {
    while (i < s.size() && !s[i].IsPunct(')')) ++i;
    if (i == s.size()) return std::nullopt;
    ++i;
  }
  if (i < s.size() && s[i].IsPunct(':')) {
    m.has_colon = true;
    m.consumed = i + 1;
    return m;
  }
  if (i == s.size()) {
    m.consumed = i;
    return m;
  }
  return std::nullopt;
}

// Second line of a split header: ':' or 'returns QName :'.
inline std::optional<HeaderMatch> MatchHeaderContinuation(
    const std::vector<Token>& s, HeaderMatch first) {
  std::size_t i = 0;
  if (!first.returns_type && i < s.size() &&
      s[i].Is(TokenKind::kIdentifier, "returns")) {
    ++i;
    auto q = ReadQualifiedName(s, i);
    if (!q) return std::nullopt;
    first.returns_type = *q;
  }
  if (i < s.size() && s[i].IsPunct(':')) {
    first.has_colon = true;
    first.consumed = i + 1;
    return first;
  }
  return std::nullopt;
}

inline bool EndsRule(const TokenList& tokens) {
  for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
    if (!it->IsSignificant()) continue;
    return it->IsPunct(';');
  }
  return false;
}

inline bool HasBareColon(const std::vector<Token>& s) {
  return std::any_of(s.begin(), s.end(),
                     [](const Token& t) { return t.IsPunct(':'); });
}

// Balanced (), [] and {}; no empty () group, empty alternative or empty
// body.
inline std::optional<std::string> CheckBodyStructure(const GrammarRule& rule) {
  auto [colon_line, colon_tok] = rule.Colon();
  std::vector<char> stack;
  bool prev_open_paren = false;
  std::size_t significant = 0;
  const Token* prev = nullptr;
  Token last_seen;
  for (std::size_t li = colon_line; li < rule.lines.size(); ++li) {
    TokenList toks = rule.lines[li].Tokens();
    std::size_t start = li == colon_line ? colon_tok + 1 : 0;
    for (std::size_t ti = start; ti < toks.size(); ++ti) {
      const Token& t = toks[ti];
      if (!t.IsSignificant()) continue;
      ++significant;
      const bool empty_before = prev == nullptr || prev->IsPunct('(') || prev->IsPunct('|');
      if (t.IsPunct('|') && empty_before) return "empty alternative";
      if ((t.IsPunct(')') || t.IsPunct(';')) && prev != nullptr && prev->IsPunct('|')) {
        return "empty alternative";
      }
      last_seen = t;
      prev = &last_seen;
      if (t.kind == TokenKind::kPunct) {
        char c = t.text[0];
        if (c == '(' || c == '[' || c == '{') stack.push_back(c);
        if (c == ')' || c == ']' || c == '}') {
          char open = c == ')' ? '(' : c == ']' ? '[' : '{';
          if (stack.empty() || stack.back() != open) {
            return "unbalanced '" + std::string(1, c) + "'";
          }
          stack.pop_back();
          if (c == ')' && prev_open_paren) return "empty group '()'";
        }
      }
      prev_open_paren = t.IsPunct('(');
    }
  }
  if (!stack.empty()) {
    return "unclosed '" + std::string(1, stack.back()) + "'";
  }
  if (significant <= 1) return "empty rule body";
  return std::nullopt;
}

}  // namespace detail

/// Parses grammar text into the document model.
///
/// Everything before the first import or rule header is kept verbatim as
/// header text. Blank lines inside rule bodies are dropped; blank and
/// comment lines between top-level elements are attached to the element
/// that follows them.
inline Grammar ParseGrammar(std::string_view source) {
  const std::string text = NormalizeNewlines(source);
  const std::vector<std::string> lines = detail::SplitLines(text);

  Grammar g;
  bool seen_element = false;
  bool in_comment = false;
  std::string pending;

  std::size_t i = 0;
  while (i < lines.size()) {
    const std::string& line = lines[i];
    const int line_no = static_cast<int>(i) + 1;
    TokenList toks = Tokenize(line, &in_comment);
    auto sig = detail::Significant(toks);

    if (sig.empty()) {
      (seen_element ? pending : g.header_text) += line + "\n";
      ++i;
      continue;
    }

    if (sig[0].Is(TokenKind::kIdentifier, "import") && sig.size() >= 2 &&
        sig[1].kind == TokenKind::kString) {
      ImportDecl imp;
      imp.uri = StringValue(sig[1]);
      if (imp.uri.empty()) throw ParseError(line_no, "import with empty uri");
      if (sig.size() >= 4 && sig[2].Is(TokenKind::kIdentifier, "as") &&
          sig[3].kind == TokenKind::kIdentifier) {
        imp.alias = sig[3].text;
      }
      imp.raw = line;
      imp.leading = std::move(pending);
      pending.clear();
      g.imports.push_back(std::move(imp));
      seen_element = true;
      ++i;
      continue;
    }

    auto header = detail::MatchHeaderPrefix(sig);
    std::size_t header_lines = 1;
    if (header && !header->has_colon) {
      header.reset();
      if (i + 1 < lines.size()) {
        bool peek_comment = in_comment;
        auto next_sig = detail::Significant(Tokenize(lines[i + 1], &peek_comment));
        auto first = detail::MatchHeaderPrefix(sig);
        auto cont = detail::MatchHeaderContinuation(next_sig, *first);
        if (cont) {
          header = cont;
          header_lines = 2;
        }
      }
    }

    if (!header) {
      if (!seen_element && !detail::HasBareColon(sig)) {
        g.header_text += line + "\n";
        ++i;
        continue;
      }
      throw ParseError(line_no, "malformed grammar rule header: " + line);
    }

    GrammarRule rule;
    rule.name = header->name;
    rule.kind = header->kind;
    rule.returns_type = header->returns_type;
    rule.leading = std::move(pending);
    pending.clear();
    if (g.FindRule(rule.name) != nullptr) {
      throw ParseError(line_no, "duplicate grammar rule '" + rule.name + "'");
    }

    bool terminated = false;
    std::size_t j = i;
    for (; j < lines.size(); ++j) {
      TokenList lt = j == i ? toks : Tokenize(lines[j], &in_comment);
      bool blank = detail::Significant(lt).empty() &&
                   std::all_of(lt.begin(), lt.end(), [](const Token& t) {
                     return t.kind == TokenKind::kWhitespace;
                   });
      if (blank && j >= i + header_lines) continue;
      rule.lines.emplace_back(lines[j]);
      if (j + 1 >= i + header_lines && detail::EndsRule(lt)) {
        terminated = true;
        break;
      }
    }
    if (!terminated) {
      throw ParseError(line_no,
                       "grammar rule '" + rule.name + "' is not terminated by ';'");
    }
    if (auto problem = detail::CheckBodyStructure(rule)) {
      throw ParseError(line_no, "grammar rule '" + rule.name + "': " + *problem);
    }
    g.rules.push_back(std::move(rule));
    seen_element = true;
    i = j + 1;
  }
  g.trailing_text = std::move(pending);
  return g;
}

/// Writes the document model back to text. Lines left blank by edits are
/// dropped; the result ends with exactly one newline.
inline std::string SerializeGrammar(const Grammar& g) {
  std::string out = g.header_text;
  for (const auto& imp : g.imports) {
    out += imp.leading;
    out += imp.Render();
    out += '\n';
  }
  for (const auto& rule : g.rules) {
    out += rule.leading;
    for (const auto& line : rule.lines) {
      if (line.IsBlank()) continue;
      out += line.content;
      out += '\n';
    }
  }
  out += g.trailing_text;
  while (!out.empty() && out.back() == '\n') out.pop_back();
  if (!out.empty()) out += '\n';
  return out;
}

}  // namespace grammar_forge

#pragma once

// Lossless tokenizer for single lines of Xtext grammar text. Concatenating
// the text of every token reproduces the input line exactly.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace grammar_forge {

enum class TokenKind {
  kWhitespace,
  kComment,     // `// ...` to end of line, or a `/* ... */` span
  kString,      // 'x' or "x", quotes included in text
  kIdentifier,  // letters, digits, underscore, optional leading '^'
  kNumber,
  kOperator,    // = += ?= :: -> => ..
  kPunct,       // any other single character
};

struct Token {
  TokenKind kind;
  std::string text;

  bool IsSignificant() const {
    return kind != TokenKind::kWhitespace && kind != TokenKind::kComment;
  }
  bool Is(TokenKind k, std::string_view t) const {
    return kind == k && text == t;
  }
  bool IsPunct(char c) const {
    return kind == TokenKind::kPunct && text.size() == 1 && text[0] == c;
  }
  bool IsAssignOp() const {
    return kind == TokenKind::kOperator &&
           (text == "=" || text == "+=" || text == "?=");
  }
  bool IsCardinality() const {
    return IsPunct('?') || IsPunct('*') || IsPunct('+');
  }
};

using TokenList = std::vector<Token>;

inline bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
inline bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

/// True when `s` is shaped like an identifier: a letter or underscore
/// followed by letters, digits or underscores.
inline bool IsIdentifierShaped(std::string_view s) {
  if (s.empty() || !IsIdentStart(s.front())) return false;
  for (char c : s) {
    if (!IsIdentChar(c)) return false;
  }
  return true;
}

/// Tokenizes one line. `in_block_comment` carries `/* */` state across
/// lines: on entry it says whether the line starts inside a block comment,
/// on exit whether the line ends inside one.
inline TokenList Tokenize(std::string_view line, bool* in_block_comment = nullptr) {
  TokenList out;
  std::size_t i = 0;
  const std::size_t n = line.size();
  auto push = [&](TokenKind kind, std::size_t begin, std::size_t end) {
    out.push_back(Token{kind, std::string(line.substr(begin, end - begin))});
  };

  if (in_block_comment != nullptr && *in_block_comment) {
    auto close = line.find("*/");
    if (close == std::string_view::npos) {
      if (n > 0) push(TokenKind::kComment, 0, n);
      return out;
    }
    push(TokenKind::kComment, 0, close + 2);
    i = close + 2;
    *in_block_comment = false;
  }

  while (i < n) {
    const char c = line[i];
    const std::size_t start = i;
    if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
      while (i < n && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r' ||
                       line[i] == '\f' || line[i] == '\v')) {
        ++i;
      }
      push(TokenKind::kWhitespace, start, i);
    } else if (c == '/' && i + 1 < n && line[i + 1] == '/') {
      push(TokenKind::kComment, start, n);
      i = n;
    } else if (c == '/' && i + 1 < n && line[i + 1] == '*') {
      auto close = line.find("*/", i + 2);
      if (close == std::string_view::npos) {
        push(TokenKind::kComment, start, n);
        i = n;
        if (in_block_comment != nullptr) *in_block_comment = true;
      } else {
        push(TokenKind::kComment, start, close + 2);
        i = close + 2;
      }
    } else if (c == '\'' || c == '"') {
      ++i;
      while (i < n && line[i] != c) {
        if (line[i] == '\\' && i + 1 < n) ++i;
        ++i;
      }
      if (i < n) ++i;  // closing quote; unterminated strings run to EOL
      push(TokenKind::kString, start, i);
    } else if (IsIdentStart(c) ||
               (c == '^' && i + 1 < n && IsIdentStart(line[i + 1]))) {
      ++i;
      while (i < n && IsIdentChar(line[i])) ++i;
      push(TokenKind::kIdentifier, start, i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < n && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
      push(TokenKind::kNumber, start, i);
    } else {
      static constexpr std::string_view kTwoChar[] = {"+=", "?=", "::", "->",
                                                      "=>", ".."};
      bool matched = false;
      if (i + 1 < n) {
        for (auto op : kTwoChar) {
          if (line.substr(i, 2) == op) {
            push(TokenKind::kOperator, i, i + 2);
            i += 2;
            matched = true;
            break;
          }
        }
      }
      if (!matched) {
        ++i;
        push(c == '=' ? TokenKind::kOperator : TokenKind::kPunct, start, i);
      }
    }
  }
  return out;
}

inline std::string Join(const TokenList& tokens) {
  std::string s;
  for (const auto& t : tokens) s += t.text;
  return s;
}

/// Decoded value of a quoted string token ('x' -> x). Backslash escapes are
/// resolved; an unterminated string yields everything after the quote.
inline std::string StringValue(const Token& t) {
  std::string v;
  if (t.kind != TokenKind::kString || t.text.empty()) return v;
  const char q = t.text.front();
  std::size_t end = t.text.size();
  if (end >= 2 && t.text.back() == q) --end;
  for (std::size_t i = 1; i < end; ++i) {
    char c = t.text[i];
    if (c == '\\' && i + 1 < end) {
      c = t.text[++i];
      switch (c) {
        case 'n': v += '\n'; break;
        case 't': v += '\t'; break;
        default: v += c;
      }
    } else {
      v += c;
    }
  }
  return v;
}

/// Builds a single-quoted keyword token for `value`.
inline Token MakeKeyword(std::string_view value, char quote = '\'') {
  std::string text(1, quote);
  for (char c : value) {
    if (c == quote || c == '\\') text += '\\';
    text += c;
  }
  text += quote;
  return Token{TokenKind::kString, std::move(text)};
}

/// Quoted identifier-shaped token, e.g. 'node'.
inline bool IsKeywordToken(const Token& t) {
  return t.kind == TokenKind::kString && IsIdentifierShaped(StringValue(t));
}

/// Quoted punctuation-shaped token, e.g. ',' or '{'.
inline bool IsSymbolToken(const Token& t) {
  return t.kind == TokenKind::kString && !StringValue(t).empty() &&
         !IsIdentifierShaped(StringValue(t));
}

inline Token Ws(std::string_view s = " ") {
  return Token{TokenKind::kWhitespace, std::string(s)};
}
inline Token Punct(char c) {
  return Token{TokenKind::kPunct, std::string(1, c)};
}

}  // namespace grammar_forge

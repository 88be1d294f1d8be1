#pragma once

// Reference implementations used only by tests. They work on raw text with
// std::regex and brute force, sharing no code with the library.

#include <algorithm>
#include <cstdint>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace gf_test::oracle {

inline std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

/// Rule texts: each rule is the run of lines from a header to the line
/// ending in an unquoted ';'.
inline std::vector<std::string> RuleTexts(const std::string& grammar) {
  static const std::regex header(
      R"(^\s*(enum\s+|terminal\s+(fragment\s+)?|fragment\s+)?[A-Za-z_]\w*\s*(returns\s+[\w:.]+\s*)?:(?!:))");
  static const std::regex split_first(R"(^\s*(enum\s+|terminal\s+|fragment\s+)?[A-Za-z_]\w*\s*$)");
  static const std::regex quoted(R"('(\\.|[^'\\])*'|"(\\.|[^"\\])*")");
  auto lines = Lines(grammar);
  std::vector<std::string> rules;
  std::string cur;
  bool in_rule = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& l = lines[i];
    if (!in_rule) {
      bool starts = std::regex_search(l, header);
      if (!starts && std::regex_match(l, split_first) && i + 1 < lines.size() &&
          std::regex_search(lines[i + 1], std::regex(R"(^\s*returns\s+[\w:.]+\s*:)"))) {
        starts = true;
      }
      if (l.rfind("grammar ", 0) == 0) starts = false;
      if (!starts) continue;
      in_rule = true;
      cur.clear();
    }
    cur += l + "\n";
    std::string bare = std::regex_replace(l, quoted, "Q");
    bare = std::regex_replace(bare, std::regex(R"(//.*$)"), "");
    bare = std::regex_replace(bare, std::regex(R"(\s+$)"), "");
    if (!bare.empty() && bare.back() == ';') {
      rules.push_back(cur);
      in_rule = false;
    }
  }
  return rules;
}

/// Counts rule call sites with regular expressions: strip keywords,
/// comments, actions, attribute names and qualified suffixes, then count
/// the identifiers left in rule bodies. Enum bodies hold no calls.
inline std::size_t CountCalls(const std::string& grammar) {
  std::size_t n = 0;
  for (std::string rule : RuleTexts(grammar)) {
    if (std::regex_search(rule, std::regex(R"(^\s*enum\b)"))) continue;
    rule = std::regex_replace(rule, std::regex(R"('(\\.|[^'\\])*'|"(\\.|[^"\\])*")"), " ");
    rule = std::regex_replace(rule, std::regex(R"(//[^\n]*)"), " ");
    rule = std::regex_replace(rule, std::regex(R"(/\*[\s\S]*?\*/)"), " ");
    std::smatch m;
    if (!std::regex_search(rule, m, std::regex(R"((^|[^:]):(?!:))"))) continue;
    std::string body = rule.substr(static_cast<std::size_t>(m.position(0) + m.length(0)));
    body = std::regex_replace(body, std::regex(R"(\{[^{}]*\})"), " ");
    body = std::regex_replace(body, std::regex(R"([A-Za-z_]\w*\s*(\+=|\?=|=))"), " ");
    body = std::regex_replace(body, std::regex(R"((::|\.)\s*[A-Za-z_]\w*)"), " ");
    body = std::regex_replace(body, std::regex(R"(\b(current|returns|EOF|hidden)\b)"), " ");
    std::regex ident(R"(\b[A-Za-z_]\w*\b)");
    n += static_cast<std::size_t>(
        std::distance(std::sregex_iterator(body.begin(), body.end(), ident),
                      std::sregex_iterator()));
  }
  return n;
}

/// Length of a longest common subsequence by trying every subsequence of
/// the shorter list.
inline std::size_t BruteLcs(const std::vector<std::string>& a,
                            const std::vector<std::string>& b) {
  const auto& s = a.size() <= b.size() ? a : b;
  const auto& l = a.size() <= b.size() ? b : a;
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << s.size()); ++mask) {
    std::size_t j = 0;
    std::size_t taken = 0;
    bool ok = true;
    for (std::size_t i = 0; i < s.size() && ok; ++i) {
      if (!(mask & (1u << i))) continue;
      while (j < l.size() && l[j] != s[i]) ++j;
      if (j == l.size()) ok = false;
      ++j;
      ++taken;
    }
    if (ok) best = std::max(best, taken);
  }
  return best;
}

/// Whitespace-collapsed, non-blank lines.
inline std::vector<std::string> NormalizedLines(const std::string& text) {
  std::vector<std::string> out;
  for (auto l : Lines(text)) {
    l = std::regex_replace(l, std::regex(R"(\s+)"), " ");
    l = std::regex_replace(l, std::regex(R"(^ | $)"), "");
    if (!l.empty()) out.push_back(l);
  }
  return out;
}

/// Zero-based indices, within the rule's text, of lines assigning `attr`
/// as their first assignment.
inline std::vector<std::size_t> AttributeLines(const std::string& rule_text,
                                               const std::string& attr) {
  std::vector<std::size_t> out;
  auto lines = Lines(rule_text);
  std::regex quoted(R"('(\\.|[^'\\])*'|"(\\.|[^"\\])*")");
  std::regex first_assign(R"(([A-Za-z_]\w*)\s*(\+=|\?=|=))");
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string l = std::regex_replace(lines[i], quoted, " ");
    l = std::regex_replace(l, std::regex(R"(\{[^}]*\})"), " ");
    std::smatch m;
    if (std::regex_search(l, m, first_assign) && m[1] == attr) out.push_back(i);
  }
  return out;
}

}  // namespace gf_test::oracle

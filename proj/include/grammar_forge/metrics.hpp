#pragma once

#include <cstddef>
#include <string>

#include "grammar_forge/calls.hpp"
#include "grammar_forge/grammar.hpp"

namespace grammar_forge {

struct GrammarMetrics {
  std::size_t line_count = 0;
  std::size_t rule_count = 0;
  std::size_t call_count = 0;

  bool operator==(const GrammarMetrics&) const = default;
};

/// Call sites in rule bodies, counted per occurrence. A call counts by its
/// position whether or not the callee is defined in this grammar.
inline std::size_t CountCalls(const Grammar& g) {
  std::size_t n = 0;
  for (const auto& rule : g.rules) {
    for (std::size_t li = 0; li < rule.lines.size(); ++li) {
      TokenList t = rule.lines[li].Tokens();
      n += FindCallSites(t, BodyFrom(rule, li, t), rule.kind).size();
    }
  }
  return n;
}

/// Metrics of the grammar as it would be written out.
inline GrammarMetrics ComputeMetrics(const Grammar& g) {
  const std::string text = SerializeGrammar(g);
  GrammarMetrics m;
  for (const auto& line : detail::SplitLines(text)) {
    if (line.find_first_not_of(" \t\r\f\v") != std::string::npos) ++m.line_count;
  }
  m.rule_count = g.rules.size();
  try {
    m.call_count = CountCalls(ParseGrammar(text));
  } catch (const ParseError&) {
    m.call_count = CountCalls(g);
  }
  return m;
}

}  // namespace grammar_forge

#pragma once

#include "grammar_forge/catalog.hpp"
#include "grammar_forge/rules/keyword_rules.hpp"
#include "grammar_forge/rules/optionality_rules.hpp"
#include "grammar_forge/rules/structure_rules.hpp"

namespace grammar_forge {

/// The shipped optimization rules. Callers may Register() more.
inline Catalog MakeDefaultCatalog() {
  using S = ScopeKind;
  const std::set<S> any{S::kGlobal, S::kRule, S::kAttribute};
  const std::set<S> global_or_rule{S::kGlobal, S::kRule};
  const std::set<S> rule_only{S::kRule};
  const std::set<S> attr_only{S::kAttribute};
  const std::set<S> global_only{S::kGlobal};

  Catalog c;
  auto add = [&c](std::string key, Subject subject, std::set<S> scopes,
                  std::vector<ArgSpec> args, std::string summary, Transform fn) {
    c.Register(CatalogEntry{std::move(key), subject, std::move(scopes), std::move(args),
                            std::move(summary)},
               std::move(fn));
  };

  add("removeBraces", Subject::kBrace, any, {}, "delete quoted '{' and '}' tokens",
      rules::RemoveBraces);
  add("removeKeyword", Subject::kKeyword, any, {{"keyword", true}},
      "delete quoted keywords (all, or only the given one)", rules::RemoveKeyword);
  add("renameKeyword", Subject::kKeyword, any, {{"old"}, {"new"}},
      "rename a quoted keyword", rules::RenameKeyword);
  add("addKeywordToRule", Subject::kKeyword, rule_only,
      {{"keyword"}, {"position", true}}, "insert a keyword at body start or end",
      rules::AddKeywordToRule);
  add("addKeywordToAttr", Subject::kKeyword, attr_only,
      {{"keyword"}, {"position", true}}, "insert a keyword before or after an attribute",
      rules::AddKeywordToAttr);
  add("addKeywordToLine", Subject::kLine, rule_only, {{"keyword"}, {"line"}},
      "insert a keyword at the start of a rule line", rules::AddKeywordToLine);
  add("addAlternativeKeyword", Subject::kKeyword, any, {{"keyword"}, {"alternative"}},
      "accept an alternative spelling of a keyword", rules::AddAlternativeKeyword);
  add("removeOptionality", Subject::kOptionality, any, {},
      "drop '?' after groups and assignments", rules::RemoveOptionality);
  add("addOptionalityToAttr", Subject::kOptionality, attr_only, {},
      "make an attribute assignment optional", rules::AddOptionalityToAttr);
  add("addOptionalityToKeyword", Subject::kOptionality, any, {{"keyword"}},
      "make a keyword optional", rules::AddOptionalityToKeyword);
  add("makeBodyOptional", Subject::kOptionality, rule_only, {},
      "make the braced container body optional", rules::MakeBodyOptional);
  add("convert1toStarToStar", Subject::kMultiplicity, {S::kRule, S::kAttribute}, {},
      "collapse a separated one-or-more list to (a+=X)*", rules::Convert1toStarToStar);
  add("changeMultiplicity", Subject::kMultiplicity, attr_only, {{"target"}},
      "set an attribute to optional, exactly-one, star or plus",
      rules::ChangeMultiplicity);
  add("removeAttribute", Subject::kAttribute, attr_only, {},
      "delete an attribute's line", rules::RemoveAttribute);
  add("removeRule", Subject::kRule, rule_only, {}, "delete a grammar rule",
      rules::RemoveRule);
  add("renameRule", Subject::kRule, rule_only, {{"newName"}},
      "rename a grammar rule and its call sites", rules::RenameRule);
  add("addSymbolToRule", Subject::kSymbol, rule_only, {{"symbol"}, {"position", true}},
      "insert a quoted symbol at body start or end", rules::AddSymbolToRule);
  add("addImport", Subject::kImport, global_only, {{"uri"}, {"alias", true}},
      "add an import declaration", rules::AddImport);
  add("removeImport", Subject::kImport, global_only, {{"uri"}},
      "remove an import declaration", rules::RemoveImport);
  add("changeBracesToParentheses", Subject::kBrace, any, {},
      "turn quoted brackets into '(' ')'", rules::ChangeBracesToParentheses);
  add("changeBracesToSquare", Subject::kBrace, any, {},
      "turn quoted brackets into '[' ']'", rules::ChangeBracesToSquare);
  add("changeBracesToAngle", Subject::kBrace, any, {},
      "turn quoted brackets into '<' '>'", rules::ChangeBracesToAngle);
  add("addSquareBracketsToAttr", Subject::kBrace, attr_only, {},
      "surround an attribute with '[' ']'", rules::AddSquareBracketsToAttr);
  add("permuteOptionalKeywordAttrs", Subject::kKeyword, rule_only,
      {{"attrA"}, {"attrB"}}, "accept two optional keyword flags in either order",
      rules::PermuteOptionalKeywordAttrs);
  add("changeCalledRule", Subject::kRuleCall, global_or_rule,
      {{"attr"}, {"newRule"}}, "change the rule an attribute calls",
      rules::ChangeCalledRule);
  return c;
}

}  // namespace grammar_forge

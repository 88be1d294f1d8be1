// Registers an extra optimization rule next to the shipped catalog and runs
// a configuration that uses it.
//
//   custom_rule_sample samples/statemachine/Statemachine.xtext

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

#include "grammar_forge/grammar_forge.hpp"
#include "grammar_forge/rules/common.hpp"

using namespace grammar_forge;

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: custom_rule_sample GRAMMAR\n";
    return 1;
  }
  std::ifstream in(argv[1]);
  std::stringstream text;
  text << in.rdbuf();

  Catalog catalog = MakeDefaultCatalog();
  catalog.Register(
      {"lowercaseKeywords", Subject::kKeyword, {ScopeKind::kGlobal, ScopeKind::kRule}, {},
       "lower-case every keyword in scope"},
      [](Grammar& g, const ScopeResolution& scope, const Args&) {
        return rules::EditScopedLines(g, scope, [](TokenList& t, std::size_t from) {
          for (std::size_t i = from; i < t.size(); ++i) {
            if (!IsKeywordToken(t[i])) continue;
            std::string v = StringValue(t[i]);
            for (auto& c : v) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            t[i] = MakeKeyword(v);
          }
        });
      });

  ConfigFile cfg = ParseConfig(
      "removeBraces\n"
      "lowercaseKeywords\n",
      catalog);
  EngineResult res = ApplyAll(ParseGrammar(text.str()), cfg.applications, false, catalog);
  std::cout << SerializeGrammar(res.grammar);
  for (const auto& o : res.report.outcomes) {
    std::cerr << FormatApplication(o.application) << ": " << ToString(o.status) << "\n";
  }
  return 0;
}

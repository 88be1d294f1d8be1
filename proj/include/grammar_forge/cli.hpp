#pragma once

// Command-line front end: optimize, diff, metrics, evolve.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grammar_forge/config.hpp"
#include "grammar_forge/default_catalog.hpp"
#include "grammar_forge/diff.hpp"
#include "grammar_forge/engine.hpp"
#include "grammar_forge/metrics.hpp"
#include "grammar_forge/report.hpp"

namespace grammar_forge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitApply = 2;

namespace detail {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw InputError("cannot write '" + path + "'");
}

inline Grammar LoadGrammar(const std::string& path) {
  std::string text = ReadFile(path);
  try {
    return ParseGrammar(text);
  } catch (const ParseError& e) {
    throw InputError(path + ":" + std::to_string(e.line()) + ": " +
                     std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
  }
}

inline ConfigFile LoadConfig(const std::string& path, const Catalog& catalog) {
  std::string text = ReadFile(path);
  try {
    return ParseConfig(text, catalog, path);
  } catch (const ConfigError& e) {
    std::string what = e.what();
    throw InputError(path + ":" + std::to_string(e.line()) + ": " +
                     what.substr(what.find(": ") + 2));
  }
}

struct Options {
  std::string input;
  std::string config;
  std::string output;
  std::string report;
  std::string format = "text";
  bool strict = false;
  std::vector<std::string> files;
};

}  // namespace detail

/// Runs the tool with `args` (without the program name). Reports go to
/// `out` or the --report file, diagnostics to `err`. Returns the exit code.
inline int RunCli(const std::vector<std::string>& args, std::ostream& out,
                  std::ostream& err) {
  using detail::Options;
  Options opt;
  CLI::App app{"Post-process generated Xtext grammars with configured optimization rules",
               "grammar-forge"};
  app.require_subcommand(1);
  auto common = [&opt](CLI::App* sub) {
    sub->add_option("--report", opt.report, "write the report to this file");
    sub->add_option("--format", opt.format, "report format")
        ->check(CLI::IsMember({"text", "json"}));
  };
  auto* optimize = app.add_subcommand("optimize", "apply a configuration to a grammar");
  optimize->add_option("-i,--input", opt.input, "input grammar")->required();
  optimize->add_option("-c,--config", opt.config, "configuration file")->required();
  optimize->add_option("-o,--output", opt.output, "optimized grammar (default: stdout)");
  optimize->add_flag("--strict", opt.strict, "fail on the first error or no-match");
  common(optimize);

  auto* evolve = app.add_subcommand(
      "evolve", "re-apply an older configuration to a regenerated grammar");
  evolve->add_option("-i,--input", opt.input, "regenerated grammar")->required();
  evolve->add_option("-c,--config", opt.config, "configuration of the previous version")
      ->required();
  evolve->add_option("-o,--output", opt.output, "optimized grammar");
  common(evolve);

  auto* diff = app.add_subcommand("diff", "compare two grammars");
  diff->add_option("files", opt.files, "BEFORE AFTER")->expected(2)->required();
  common(diff);

  auto* metrics = app.add_subcommand("metrics", "size metrics of a grammar");
  metrics->add_option("-i,--input", opt.input, "grammar");
  metrics->add_option("files", opt.files, "grammar")->expected(0, 1);
  common(metrics);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "grammar-forge: " << e.what() << "\n";
    return kExitInput;
  }

  const bool json = opt.format == "json";
  auto emit = [&](const std::string& text) {
    if (opt.report.empty()) {
      out << text;
    } else {
      detail::WriteFile(opt.report, text);
    }
  };

  try {
    if (diff->parsed()) {
      Grammar before = detail::LoadGrammar(opt.files[0]);
      Grammar after = detail::LoadGrammar(opt.files[1]);
      DiffReport d = DiffGrammars(before, after);
      emit(json ? report::DiffJson(d) : report::DiffText(d));
      return kExitOk;
    }
    if (metrics->parsed()) {
      std::string path = !opt.input.empty() ? opt.input
                         : opt.files.empty() ? std::string()
                                             : opt.files[0];
      if (path.empty()) {
        err << "grammar-forge: metrics needs a grammar file\n";
        return kExitInput;
      }
      GrammarMetrics m = ComputeMetrics(detail::LoadGrammar(path));
      emit(json ? report::MetricsJson(m) : report::MetricsText(m));
      return kExitOk;
    }

    const bool is_evolve = evolve->parsed();
    const bool strict = opt.strict && !is_evolve;
    const Catalog catalog = MakeDefaultCatalog();
    Grammar g = detail::LoadGrammar(opt.input);
    ConfigFile cfg = detail::LoadConfig(opt.config, catalog);
    EngineResult res = ApplyAll(std::move(g), cfg.applications, strict, catalog);

    report::RunInfo info;
    info.command = is_evolve ? "evolve" : "optimize";
    info.input = opt.input;
    info.config = opt.config;
    info.output = opt.output;
    info.exit_code = kExitOk;
    if (res.failed_index || res.report.Count(OutcomeStatus::kError) > 0) {
      info.exit_code = kExitApply;
    }

    for (std::size_t i = 0; i < res.report.outcomes.size(); ++i) {
      const auto& o = res.report.outcomes[i];
      if (o.status == OutcomeStatus::kApplied) continue;
      if (o.status == OutcomeStatus::kNoMatch && !strict && !is_evolve) continue;
      err << opt.config << ":" << report::ConfigLine(&cfg, i) << ": "
          << o.application.catalog_rule << ": " << ToString(o.status);
      if (!o.message.empty()) err << ": " << o.message;
      err << "\n";
    }

    const std::string text = SerializeGrammar(res.grammar);
    const bool write = !(strict && info.exit_code != kExitOk);
    if (write) {
      if (!opt.output.empty()) {
        detail::WriteFile(opt.output, text);
      } else if (!is_evolve) {
        out << text;
      }
    } else {
      err << "grammar-forge: strict run failed; no output written\n";
    }
    std::string rep = json ? report::EngineJson(res.report, &cfg, info)
                           : report::EngineText(res.report, &cfg, info);
    if (!opt.report.empty()) {
      detail::WriteFile(opt.report, rep);
    } else if (!opt.output.empty() || is_evolve) {
      out << rep;
    }
    return info.exit_code;
  } catch (const detail::InputError& e) {
    err << "grammar-forge: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace grammar_forge::cli

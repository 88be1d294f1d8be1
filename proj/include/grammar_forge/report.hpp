#pragma once

// Text and JSON-lines rendering of engine, diff and metrics results.

#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "grammar_forge/config.hpp"
#include "grammar_forge/diff.hpp"
#include "grammar_forge/engine.hpp"
#include "grammar_forge/metrics.hpp"

namespace grammar_forge::report {

using nlohmann::json;

inline json ScopeJson(const ScopeSpec& s) {
  json j = json::object();
  j["kind"] = ToString(s.Kind());
  if (s.rule) j["rule"] = *s.rule;
  if (s.attr) j["attr"] = *s.attr;
  if (!s.exclusions.empty()) j["except"] = s.exclusions;
  return j;
}

inline int ConfigLine(const ConfigFile* cfg, std::size_t i) {
  return cfg != nullptr && i < cfg->line_map.size() ? cfg->line_map[i] : 0;
}

struct RunInfo {
  std::string command;
  std::string input;
  std::string config;
  std::string output;
  int exit_code = 0;
};

inline json OutcomeJson(const ApplicationOutcome& o, std::size_t index,
                        const ConfigFile* cfg) {
  json j;
  j["type"] = "outcome";
  j["index"] = index;
  j["configLine"] = ConfigLine(cfg, index);
  j["rule"] = o.application.catalog_rule;
  j["scope"] = ScopeJson(o.application.scope);
  j["args"] = o.application.args;
  j["status"] = ToString(o.status);
  j["matchedLines"] = o.matched_lines;
  j["matchedRules"] = o.matched_rules;
  if (!o.message.empty()) j["message"] = o.message;
  return j;
}

inline std::string EngineJson(const EngineReport& rep, const ConfigFile* cfg,
                              const RunInfo& info) {
  std::string out;
  for (std::size_t i = 0; i < rep.outcomes.size(); ++i) {
    out += OutcomeJson(rep.outcomes[i], i, cfg).dump() + "\n";
    if (info.command == "evolve" && rep.outcomes[i].status == OutcomeStatus::kNoMatch) {
      json s;
      s["type"] = "stale";
      s["index"] = i;
      s["configLine"] = ConfigLine(cfg, i);
      s["application"] = FormatApplication(rep.outcomes[i].application);
      s["message"] = rep.outcomes[i].message;
      out += s.dump() + "\n";
    }
  }
  json sum;
  sum["type"] = "summary";
  sum["command"] = info.command;
  sum["input"] = info.input;
  sum["config"] = info.config;
  sum["output"] = info.output;
  sum["gora"] = rep.gora_count;
  sum["applied"] = rep.Count(OutcomeStatus::kApplied);
  sum["noMatch"] = rep.Count(OutcomeStatus::kNoMatch);
  sum["error"] = rep.Count(OutcomeStatus::kError);
  sum["exitCode"] = info.exit_code;
  out += sum.dump() + "\n";
  return out;
}

inline std::string EngineText(const EngineReport& rep, const ConfigFile* cfg,
                              const RunInfo& info) {
  std::ostringstream os;
  for (std::size_t i = 0; i < rep.outcomes.size(); ++i) {
    const auto& o = rep.outcomes[i];
    os << "config line " << ConfigLine(cfg, i) << ": " << FormatApplication(o.application)
       << " -> " << ToString(o.status);
    if (o.status == OutcomeStatus::kApplied) {
      os << " (lines " << o.matched_lines << ", rules " << o.matched_rules << ")";
    }
    if (!o.message.empty()) os << ": " << o.message;
    os << "\n";
  }
  if (info.command == "evolve") {
    std::size_t stale = rep.Count(OutcomeStatus::kNoMatch);
    os << "stale applications: " << stale << "\n";
    for (std::size_t i = 0; i < rep.outcomes.size(); ++i) {
      if (rep.outcomes[i].status != OutcomeStatus::kNoMatch) continue;
      os << "  config line " << ConfigLine(cfg, i) << ": "
         << FormatApplication(rep.outcomes[i].application) << "\n";
    }
  }
  os << "#GORA " << rep.gora_count << ", applied " << rep.Count(OutcomeStatus::kApplied)
     << ", no-match " << rep.Count(OutcomeStatus::kNoMatch) << ", error "
     << rep.Count(OutcomeStatus::kError) << "\n";
  return os.str();
}

inline std::string DiffJson(const DiffReport& d) {
  std::string out;
  for (const auto& rd : d.per_rule) {
    json j;
    j["type"] = "rule";
    j["name"] = rd.kind == ChangeKind::kDeleted ? rd.old_name : rd.name;
    if (rd.kind == ChangeKind::kModified && rd.old_name != rd.name) {
      j["oldName"] = rd.old_name;
    }
    j["change"] = ToString(rd.kind);
    json mods = json::array();
    for (const auto& [o, n] : rd.modified_lines) mods.push_back({{"old", o}, {"new", n}});
    j["modifiedLines"] = mods;
    j["addedLines"] = rd.added_lines;
    j["deletedLines"] = rd.deleted_lines;
    out += j.dump() + "\n";
  }
  json sum;
  sum["type"] = "summary";
  sum["rulesModified"] = d.rules_modified;
  sum["rulesAdded"] = d.rules_added;
  sum["rulesDeleted"] = d.rules_deleted;
  sum["linesModified"] = d.lines_modified;
  sum["linesAdded"] = d.lines_added;
  sum["linesDeleted"] = d.lines_deleted;
  sum["importsAdded"] = d.imports_added;
  sum["importsDeleted"] = d.imports_deleted;
  json dangling = json::array();
  for (const auto& c : d.dangling_calls) {
    dangling.push_back({{"rule", c.rule}, {"called", c.called}});
  }
  sum["danglingCalls"] = dangling;
  out += sum.dump() + "\n";
  return out;
}

inline std::string DiffText(const DiffReport& d) {
  std::ostringstream os;
  for (const auto& rd : d.per_rule) {
    const std::string& name = rd.kind == ChangeKind::kDeleted ? rd.old_name : rd.name;
    os << ToString(rd.kind) << " rule " << name;
    if (rd.kind == ChangeKind::kModified && rd.old_name != rd.name) {
      os << " (was " << rd.old_name << ")";
    }
    os << "\n";
    for (const auto& [o, n] : rd.modified_lines) os << "  ~ " << o << "  =>  " << n << "\n";
    for (const auto& l : rd.deleted_lines) os << "  - " << l << "\n";
    for (const auto& l : rd.added_lines) os << "  + " << l << "\n";
  }
  os << "rules: " << d.rules_modified << " modified, " << d.rules_added << " added, "
     << d.rules_deleted << " deleted\n";
  os << "lines: " << d.lines_modified << " modified, " << d.lines_added << " added, "
     << d.lines_deleted << " deleted\n";
  os << "imports: " << d.imports_added << " added, " << d.imports_deleted << " deleted\n";
  os << "dangling calls: " << d.dangling_calls.size() << "\n";
  for (const auto& c : d.dangling_calls) os << "  " << c.rule << " -> " << c.called << "\n";
  return os.str();
}

inline std::string MetricsJson(const GrammarMetrics& m) {
  json j;
  j["type"] = "metrics";
  j["lines"] = m.line_count;
  j["rules"] = m.rule_count;
  j["calls"] = m.call_count;
  return j.dump() + "\n";
}

inline std::string MetricsText(const GrammarMetrics& m) {
  std::ostringstream os;
  os << "lines: " << m.line_count << "\nrules: " << m.rule_count
     << "\ncalls: " << m.call_count << "\n";
  return os.str();
}

}  // namespace grammar_forge::report

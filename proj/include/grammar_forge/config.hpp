#pragma once

// Line-oriented configuration files listing rule applications:
//
//   # comment
//   removeBraces rule=NodeStmt
//   renameKeyword arg=graph arg=digraph except=Subgraph,Graph
//   addKeywordToAttr rule=A attr=b arg="two words" arg=after

#include <algorithm>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "grammar_forge/catalog.hpp"
#include "grammar_forge/engine.hpp"

namespace grammar_forge {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class ConfigSyntaxError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class UnknownRule : public ConfigError {
 public:
  UnknownRule(int line, const std::string& key)
      : ConfigError(line, "unknown optimization rule '" + key + "'"), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class BadArity : public ConfigError {
 public:
  BadArity(int line, const std::string& key, const CatalogEntry& e, std::size_t got)
      : ConfigError(line, "'" + key + "' takes " + Range(e) + " arguments, got " +
                              std::to_string(got)),
        key_(key) {}
  const std::string& key() const { return key_; }

 private:
  static std::string Range(const CatalogEntry& e) {
    if (e.MinArgs() == e.MaxArgs()) return std::to_string(e.MinArgs());
    return std::to_string(e.MinArgs()) + ".." + std::to_string(e.MaxArgs());
  }
  std::string key_;
};

struct ConfigFile {
  std::vector<RuleApplication> applications;
  std::string source_path;
  std::vector<int> line_map;  // application index -> 1-based source line
};

namespace detail {

/// Byte offset of the first invalid UTF-8 sequence, or npos.
inline std::size_t FindInvalidUtf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    char32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return i;
    }
    if (i + len > s.size()) return i;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return i;
      cp = (cp << 6) | (cc & 0x3F);
    }
    const char32_t min[] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < min[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return i;
    i += len;
  }
  return std::string_view::npos;
}

struct ConfigWord {
  std::string text;         // unquoted, unescaped
  std::size_t eq = std::string::npos;  // first '=' outside quotes
};

inline std::vector<ConfigWord> SplitConfigLine(std::string_view line, int line_no) {
  std::vector<ConfigWord> words;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t') {
      ++i;
      continue;
    }
    if (line[i] == '#') break;
    ConfigWord w;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '#') {
      if (line[i] == '"') {
        ++i;
        bool closed = false;
        while (i < line.size()) {
          char c = line[i++];
          if (c == '"') {
            closed = true;
            break;
          }
          if (c == '\\') {
            if (i == line.size()) break;
            char e = line[i++];
            c = e == 'n' ? '\n' : e == 't' ? '\t' : e;
          }
          w.text += c;
        }
        if (!closed) throw ConfigSyntaxError(line_no, "unterminated quoted value");
        continue;
      }
      if (line[i] == '=' && w.eq == std::string::npos) w.eq = w.text.size();
      w.text += line[i++];
    }
    words.push_back(std::move(w));
  }
  return words;
}

inline std::string QuoteConfigValue(const std::string& v) {
  bool plain = !v.empty();
  for (char c : v) {
    if (c == ' ' || c == '\t' || c == '"' || c == '#' || c == '\\' || c == '\n' ||
        c == '=') {
      plain = false;
    }
  }
  if (plain) return v;
  std::string out = "\"";
  for (char c : v) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (c == '\n') {
      out += "\\n";
    } else if (c == '\t') {
      out += "\\t";
    } else {
      out += c;
    }
  }
  return out + "\"";
}

}  // namespace detail

/// Parses configuration text. Every application is checked against the
/// catalog: the key must exist, the scope kind must be accepted and the
/// argument count must fit.
inline ConfigFile ParseConfig(std::string_view source, const Catalog& catalog,
                              std::string source_path = "") {
  ConfigFile cfg;
  cfg.source_path = std::move(source_path);
  if (auto bad = detail::FindInvalidUtf8(source); bad != std::string_view::npos) {
    int line = 1 + static_cast<int>(std::count(source.begin(), source.begin() +
                                                   static_cast<std::ptrdiff_t>(bad),
                                               '\n'));
    throw ConfigSyntaxError(line, "invalid UTF-8");
  }
  const std::string text = NormalizeNewlines(source);
  int line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + start, end - start);
    start = end + 1;
    ++line_no;

    auto words = detail::SplitConfigLine(line, line_no);
    if (words.empty()) continue;
    if (words[0].eq != std::string::npos) {
      throw ConfigSyntaxError(line_no, "expected an optimization rule name first");
    }
    RuleApplication app;
    app.catalog_rule = words[0].text;
    const Catalog::Rule* rule = catalog.Find(app.catalog_rule);
    if (rule == nullptr) throw UnknownRule(line_no, app.catalog_rule);

    bool seen_except = false;
    for (std::size_t k = 1; k < words.size(); ++k) {
      const auto& w = words[k];
      if (w.eq == std::string::npos) {
        throw ConfigSyntaxError(line_no, "expected name=value, got '" + w.text + "'");
      }
      std::string name = w.text.substr(0, w.eq);
      std::string value = w.text.substr(w.eq + 1);
      if (name == "arg") {
        app.args.push_back(std::move(value));
        continue;
      }
      if (name != "rule" && name != "attr" && name != "except") {
        throw ConfigSyntaxError(line_no, "unknown option '" + name + "'");
      }
      if (value.empty()) throw ConfigSyntaxError(line_no, "empty value for '" + name + "'");
      if (name == "rule" || name == "attr") {
        auto& slot = name == "rule" ? app.scope.rule : app.scope.attr;
        if (slot) throw ConfigSyntaxError(line_no, "'" + name + "' given twice");
        if (!IsIdentifierShaped(value)) {
          throw ConfigSyntaxError(line_no, "'" + value + "' is not a valid name");
        }
        slot = std::move(value);
        continue;
      }
      if (seen_except) throw ConfigSyntaxError(line_no, "'except' given twice");
      seen_except = true;
      std::size_t p = 0;
      while (p <= value.size()) {
        std::size_t comma = value.find(',', p);
        if (comma == std::string::npos) comma = value.size();
        std::string item = value.substr(p, comma - p);
        if (!IsIdentifierShaped(item)) {
          throw ConfigSyntaxError(line_no, "bad exclusion list '" + value + "'");
        }
        app.scope.exclusions.push_back(std::move(item));
        p = comma + 1;
      }
    }
    if (auto problem = app.scope.Problem()) throw ConfigSyntaxError(line_no, *problem);
    if (!rule->entry.AllowsScope(app.scope.Kind())) {
      throw ConfigSyntaxError(line_no, "'" + app.catalog_rule + "' does not accept " +
                                           ToString(app.scope.Kind()) + " scope");
    }
    if (app.args.size() < rule->entry.MinArgs() ||
        app.args.size() > rule->entry.MaxArgs()) {
      throw BadArity(line_no, app.catalog_rule, rule->entry, app.args.size());
    }
    cfg.applications.push_back(std::move(app));
    cfg.line_map.push_back(line_no);
  }
  return cfg;
}

/// One application in configuration syntax, without a newline.
inline std::string FormatApplication(const RuleApplication& app) {
  std::string out = app.catalog_rule;
  if (app.scope.rule) out += " rule=" + detail::QuoteConfigValue(*app.scope.rule);
  if (app.scope.attr) out += " attr=" + detail::QuoteConfigValue(*app.scope.attr);
  for (const auto& a : app.args) out += " arg=" + detail::QuoteConfigValue(a);
  if (!app.scope.exclusions.empty()) {
    std::string list;
    for (const auto& e : app.scope.exclusions) {
      if (!list.empty()) list += ',';
      list += e;
    }
    out += " except=" + list;
  }
  return out;
}

inline std::string SerializeConfig(const std::vector<RuleApplication>& apps) {
  std::string out;
  for (const auto& a : apps) out += FormatApplication(a) + "\n";
  return out;
}

/// Application-level difference between two configurations. Deleted and
/// added applications of the same rule key and grammar rule are paired
/// into changes; one change counts once toward the total.
struct ConfigDiff {
  std::vector<std::size_t> deleted;  // indices into the old config
  std::vector<std::size_t> added;    // indices into the new config
  std::vector<std::pair<std::size_t, std::size_t>> changed;  // (old, new)

  std::size_t RawDeleted() const { return deleted.size() + changed.size(); }
  std::size_t RawAdded() const { return added.size() + changed.size(); }
  /// #cORA: changed + added + deleted applications.
  std::size_t Total() const { return deleted.size() + added.size() + changed.size(); }
};

/// Order-preserving alignment of the two application lists at minimum
/// cost: an equal pair is free, a change (same key and scope rule) costs 1,
/// a lone addition or deletion costs 1. Equal applications form a longest
/// common subsequence of the remaining choices.
inline ConfigDiff DiffConfigs(const std::vector<RuleApplication>& a,
                              const std::vector<RuleApplication>& b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  auto pairable = [&](std::size_t i, std::size_t j) {
    return a[i].catalog_rule == b[j].catalog_rule && a[i].scope.rule == b[j].scope.rule;
  };
  std::vector<std::vector<std::size_t>> cost(n + 1, std::vector<std::size_t>(m + 1, 0));
  for (std::size_t i = n + 1; i-- > 0;) {
    for (std::size_t j = m + 1; j-- > 0;) {
      if (i == n || j == m) {
        cost[i][j] = (n - i) + (m - j);
        continue;
      }
      std::size_t best = std::min(cost[i + 1][j], cost[i][j + 1]) + 1;
      if (a[i] == b[j]) {
        best = std::min(best, cost[i + 1][j + 1]);
      } else if (pairable(i, j)) {
        best = std::min(best, cost[i + 1][j + 1] + 1);
      }
      cost[i][j] = best;
    }
  }
  ConfigDiff d;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < n || j < m) {
    if (i < n && j < m && a[i] == b[j] && cost[i][j] == cost[i + 1][j + 1]) {
      ++i;
      ++j;
    } else if (i < n && j < m && pairable(i, j) &&
               cost[i][j] == cost[i + 1][j + 1] + 1) {
      d.changed.emplace_back(i++, j++);
    } else if (i < n && (j == m || cost[i][j] == cost[i + 1][j] + 1)) {
      d.deleted.push_back(i++);
    } else {
      d.added.push_back(j++);
    }
  }
  return d;
}

}  // namespace grammar_forge

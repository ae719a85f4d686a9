#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bitempo/core/errors.hpp"
#include "bitempo/core/grid.hpp"

namespace bitempo::cli {

/// Malformed or schema-violating configuration. Exit status 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A command-specific key is absent. Exit status 3, like other preconditions.
class MissingKeyError : public DomainError {
 public:
  using DomainError::DomainError;
};

inline const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> names{"classical-check", "classical-integrate", "quantum-fluct",
                                              "uncertainty",     "continuity",          "dirac",
                                              "mass-spectrum"};
  return names;
}

/// Sectioned `key = value` scenario file. Keys outside a section are
/// rejected; the scenario section must name a known command.
class ScenarioConfig {
 public:
  using Section = std::map<std::string, std::string>;

  /// Throws ConfigError with the line of the offending entry.
  static ScenarioConfig parse(const std::string& text, const std::string& origin = "<config>");
  static ScenarioConfig load(const std::string& path);

  const std::string& command() const { return command_; }
  const std::string& name() const { return name_; }
  const std::string& origin() const { return origin_; }
  const std::map<std::string, Section>& sections() const { return sections_; }

  bool has(const std::string& section, const std::string& key) const;
  bool has_section(const std::string& section) const { return sections_.count(section) != 0; }

  /// Typed accessors. Absent keys throw MissingKeyError naming "[section] key";
  /// unparsable or non-finite values throw ConfigError naming the line.
  std::string text(const std::string& section, const std::string& key) const;
  double number(const std::string& section, const std::string& key) const;
  double number(const std::string& section, const std::string& key, double fallback) const;
  std::vector<double> numbers(const std::string& section, const std::string& key) const;
  /// Rows separated by ';', entries by commas or spaces.
  std::vector<std::vector<double>> rows(const std::string& section, const std::string& key) const;
  long integer(const std::string& section, const std::string& key) const;
  long integer(const std::string& section, const std::string& key, long fallback) const;
  bool flag(const std::string& section, const std::string& key, bool fallback) const;
  /// "min, max, count" with max > min and count >= 3.
  core::Axis axis(const std::string& section, const std::string& key) const;

  /// "line N: " for a known entry, empty otherwise.
  std::string where(const std::string& section, const std::string& key) const;

 private:
  std::string origin_;
  std::string command_;
  std::string name_;
  std::map<std::string, Section> sections_;
  std::map<std::pair<std::string, std::string>, int> lines_;
};

/// Known names closest to `name` first (by edit distance), all of them listed.
std::vector<std::string> suggestions(const std::string& name, const std::vector<std::string>& known);

}  // namespace bitempo::cli

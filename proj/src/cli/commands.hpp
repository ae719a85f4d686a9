#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "bitempo/cli/config.hpp"
#include "json.hpp"

namespace bitempo::cli::detail {

using nlohmann::json;

/// Collects data files written next to the report.
class Artifacts {
 public:
  Artifacts(std::filesystem::path dir, std::string stem) : dir_(std::move(dir)), stem_(std::move(stem)) {}

  /// Writes `<stem>.<suffix>` atomically and records its file name.
  void write(const std::string& suffix, const std::string& content);
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::filesystem::path dir_;
  std::string stem_;
  std::vector<std::string> names_;
};

struct CommandEntry {
  const char* name;
  void (*check)(const ScenarioConfig&);
  json (*run)(const ScenarioConfig&, Artifacts&);
};

const std::vector<CommandEntry>& commands();

}  // namespace bitempo::cli::detail

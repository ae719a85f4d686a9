#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "bitempo/cli/config.hpp"

namespace bitempo::cli {

enum class ReportFormat { json, csv };

enum ExitCode : int { exit_ok = 0, exit_usage = 2, exit_domain = 3, exit_numerical = 4 };

/// Parses every command-specific parameter without running anything.
/// Throws ConfigError or MissingKeyError.
void check_scenario(const ScenarioConfig& cfg);

/// Runs the scenario, writes its data files into `out_dir` and returns the
/// report (scenario echo, results, artifact names). Runtime is not included.
nlohmann::json run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir);

/// The report without its "runtime" section.
nlohmann::json comparable(const nlohmann::json& report);

/// Exit status for an error escaping a command.
int exit_code_for(const std::exception& e);

/// `<command> --config <path> [--out <dir>] [--format json|csv]`, or
/// `validate --config <path>`. Returns the process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bitempo::cli

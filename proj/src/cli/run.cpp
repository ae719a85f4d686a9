#include "bitempo/cli/run.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <ostream>

#include "CLI11.hpp"

#include "bitempo/cli/output.hpp"
#include "commands.hpp"

namespace bitempo::cli {

using nlohmann::json;

namespace {

const detail::CommandEntry& entry_for(const ScenarioConfig& cfg) {
  for (const auto& e : detail::commands()) {
    if (cfg.command() == e.name) return e;
  }
  throw ConfigError(cfg.origin() + ": unknown command '" + cfg.command() + "'");
}

std::string slug(const std::string& name) {
  std::string s;
  for (char c : name) {
    const auto u = static_cast<unsigned char>(c);
    s += std::isalnum(u) ? static_cast<char>(std::tolower(u)) : '-';
  }
  return s.empty() ? "scenario" : s;
}

void flatten(const json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else {
    std::string v;
    if (j.is_number_float()) {
      v = format_number(j.get<double>());
    } else if (j.is_string()) {
      v = j.get<std::string>();
    } else {
      v = j.dump();
    }
    if (v.find_first_of(",\"\n") != std::string::npos) {
      std::string q = "\"";
      for (char c : v) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      v = q + "\"";
    }
    out += prefix + "," + v + "\n";
  }
}

}  // namespace

void check_scenario(const ScenarioConfig& cfg) { entry_for(cfg).check(cfg); }

json run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir) {
  const auto& entry = entry_for(cfg);
  entry.check(cfg);
  detail::Artifacts artifacts(out_dir, slug(cfg.name()));
  json results = entry.run(cfg, artifacts);
  return {{"scenario", {{"name", cfg.name()}, {"command", cfg.command()}, {"config", cfg.sections()}}},
          {"status", "ok"},
          {"results", std::move(results)},
          {"artifacts", artifacts.names()}};
}

json comparable(const json& report) {
  json copy = report;
  copy.erase("runtime");
  return copy;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return exit_usage;
  if (dynamic_cast<const ContractViolation*>(&e) || dynamic_cast<const DomainError*>(&e)) return exit_domain;
  return exit_numerical;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"bitempo: two-time dynamics scenarios"};
  std::string command;
  std::string config;
  std::string out_dir = "bitempo-out";
  std::string format = "json";
  std::vector<std::string> allowed = known_commands();
  allowed.emplace_back("validate");
  app.add_option("command", command, "scenario command or 'validate'")
      ->required()
      ->check(CLI::IsMember(allowed));
  app.add_option("--config", config, "scenario file (INI)")->required();
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }

  try {
    const ScenarioConfig cfg = ScenarioConfig::load(config);
    if (command == "validate") {
      check_scenario(cfg);
      out << "ok\n";
      return exit_ok;
    }
    if (cfg.command() != command) {
      err << "error: " << config << " describes a '" << cfg.command() << "' scenario, not '" << command << "'\n";
      return exit_usage;
    }
    const auto start = std::chrono::steady_clock::now();
    json report = run_scenario(cfg, out_dir);
    report["runtime"] = {
        {"wall_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
    const std::string stem = slug(cfg.name());
    std::filesystem::path written;
    if (format == "json") {
      written = std::filesystem::path(out_dir) / (stem + ".report.json");
      write_atomic(written, report.dump(2) + "\n");
    } else {
      std::string text = "key,value\n";
      flatten(report, "", text);
      written = std::filesystem::path(out_dir) / (stem + ".report.csv");
      write_atomic(written, text);
    }
    out << written.string() << "\n";
    return exit_ok;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace bitempo::cli

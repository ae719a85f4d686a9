#include "bitempo/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace bitempo::cli {

namespace {

std::string join(const std::vector<std::string>& items) {
  return boost::algorithm::join(items, ", ");
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

// Maps (section, key) to its 1-based line; ini_parser has already validated the layout.
std::map<std::pair<std::string, std::string>, int> index_lines(const std::string& text) {
  std::map<std::pair<std::string, std::string>, int> lines;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    boost::algorithm::trim(line);
    if (line.empty() || line[0] == ';' || line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = boost::algorithm::trim_copy(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq != std::string::npos) lines[{section, boost::algorithm::trim_copy(line.substr(0, eq))}] = number;
  }
  return lines;
}

double to_number(const std::string& raw, const std::string& context) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(raw, &used);
  } catch (const std::exception&) {
    throw ConfigError(context + "'" + raw + "' is not a number");
  }
  if (used != raw.size()) throw ConfigError(context + "'" + raw + "' is not a number");
  if (!std::isfinite(v)) throw ConfigError(context + "value must be finite");
  return v;
}

}  // namespace

ScenarioConfig ScenarioConfig::parse(const std::string& text, const std::string& origin) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    std::ostringstream msg;
    msg << origin << ": line " << e.line() << ": " << e.message();
    throw ConfigError(msg.str());
  }

  ScenarioConfig cfg;
  cfg.origin_ = origin;
  cfg.lines_ = index_lines(text);
  for (const auto& [section, body] : tree) {
    if (cfg.lines_.count({"", section}) != 0) {
      throw ConfigError(origin + ": " + cfg.where("", section) + "key '" + section + "' is outside any section");
    }
    Section& s = cfg.sections_[section];
    for (const auto& [key, value] : body) s[key] = boost::algorithm::trim_copy(value.data());
  }
  if (!cfg.has("scenario", "command")) throw ConfigError(origin + ": missing [scenario] command");
  cfg.command_ = cfg.sections_["scenario"]["command"];
  const auto& known = known_commands();
  if (std::find(known.begin(), known.end(), cfg.command_) == known.end()) {
    throw ConfigError(origin + ": " + cfg.where("scenario", "command") + "unknown command '" + cfg.command_ +
                      "'; known commands: " + join(suggestions(cfg.command_, known)));
  }
  cfg.name_ = cfg.has("scenario", "name") ? cfg.sections_["scenario"]["name"] : cfg.command_;
  return cfg;
}

ScenarioConfig ScenarioConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str(), path);
}

bool ScenarioConfig::has(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key) != 0;
}

std::string ScenarioConfig::where(const std::string& section, const std::string& key) const {
  const auto it = lines_.find({section, key});
  return it == lines_.end() ? std::string() : "line " + std::to_string(it->second) + ": ";
}

std::string ScenarioConfig::text(const std::string& section, const std::string& key) const {
  if (!has(section, key)) throw MissingKeyError("missing required key [" + section + "] " + key);
  return sections_.at(section).at(key);
}

double ScenarioConfig::number(const std::string& section, const std::string& key) const {
  return to_number(text(section, key), where(section, key) + "[" + section + "] " + key + ": ");
}

double ScenarioConfig::number(const std::string& section, const std::string& key, double fallback) const {
  return has(section, key) ? number(section, key) : fallback;
}

std::vector<double> ScenarioConfig::numbers(const std::string& section, const std::string& key) const {
  const std::string raw = text(section, key);
  std::vector<std::string> parts;
  boost::algorithm::split(parts, raw, boost::algorithm::is_any_of(", "), boost::algorithm::token_compress_on);
  std::vector<double> out;
  const std::string context = where(section, key) + "[" + section + "] " + key + ": ";
  for (const auto& p : parts) {
    if (!p.empty()) out.push_back(to_number(p, context));
  }
  if (out.empty()) throw ConfigError(context + "expected a list of numbers");
  return out;
}

std::vector<std::vector<double>> ScenarioConfig::rows(const std::string& section, const std::string& key) const {
  std::vector<std::string> lines;
  boost::algorithm::split(lines, text(section, key), boost::algorithm::is_any_of(";"));
  const std::string context = where(section, key) + "[" + section + "] " + key + ": ";
  std::vector<std::vector<double>> out;
  for (const auto& line : lines) {
    std::vector<std::string> parts;
    const std::string trimmed = boost::algorithm::trim_copy(line);
    if (trimmed.empty()) continue;
    boost::algorithm::split(parts, trimmed, boost::algorithm::is_any_of(", "), boost::algorithm::token_compress_on);
    std::vector<double> row;
    for (const auto& p : parts) {
      if (!p.empty()) row.push_back(to_number(p, context));
    }
    out.push_back(std::move(row));
  }
  if (out.empty()) throw ConfigError(context + "expected rows separated by ';'");
  return out;
}

long ScenarioConfig::integer(const std::string& section, const std::string& key) const {
  const double v = number(section, key);
  if (v != std::floor(v) || std::abs(v) > 1e15) {
    throw ConfigError(where(section, key) + "[" + section + "] " + key + ": expected an integer");
  }
  return static_cast<long>(v);
}

long ScenarioConfig::integer(const std::string& section, const std::string& key, long fallback) const {
  return has(section, key) ? integer(section, key) : fallback;
}

bool ScenarioConfig::flag(const std::string& section, const std::string& key, bool fallback) const {
  if (!has(section, key)) return fallback;
  const std::string v = boost::algorithm::to_lower_copy(text(section, key));
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw ConfigError(where(section, key) + "[" + section + "] " + key + ": expected true or false");
}

core::Axis ScenarioConfig::axis(const std::string& section, const std::string& key) const {
  const std::vector<double> v = numbers(section, key);
  const std::string context = where(section, key) + "[" + section + "] " + key + ": ";
  if (v.size() != 3) throw ConfigError(context + "expected 'min, max, count'");
  if (v[2] != std::floor(v[2])) throw ConfigError(context + "count must be an integer");
  if (v[2] < 3) throw ConfigError(context + "count must be >= 3, got " + text(section, key));
  if (!(v[1] > v[0])) throw ConfigError(context + "max must exceed min");
  return {v[0], v[1], static_cast<std::size_t>(v[2])};
}

std::vector<std::string> suggestions(const std::string& name, const std::vector<std::string>& known) {
  std::vector<std::string> out = known;
  std::stable_sort(out.begin(), out.end(), [&](const std::string& a, const std::string& b) {
    return edit_distance(name, a) < edit_distance(name, b);
  });
  return out;
}

}  // namespace bitempo::cli

#include "pwinterp/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

#include "pwinterp/errors.hpp"

namespace pwinterp {

namespace {

std::string trim(const std::string& text) {
  const std::size_t first = text.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const std::size_t last = text.find_last_not_of(" \t");
  return text.substr(first, last - first + 1);
}

struct Parser {
  std::map<std::string, std::string>* values;
  std::set<std::filesystem::path> open_files;

  void parse_text(const std::string& text, const std::filesystem::path& base_dir, int depth) {
    if (depth > 16) throw ConfigError("config includes nested deeper than 16 levels");
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
      ++number;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      const std::size_t hash = raw.find('#');
      const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
      if (line.empty()) continue;

      if (line.rfind("include", 0) == 0 && (line.size() == 7 || line[7] == ' ' || line[7] == '\t')) {
        const std::string target = trim(line.substr(7));
        if (target.empty())
          throw ConfigError("config line " + std::to_string(number) + ": include needs a path");
        std::filesystem::path included(target);
        if (included.is_relative()) included = base_dir / included;
        parse_file(included, depth + 1);
        continue;
      }

      const std::size_t eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError("config line " + std::to_string(number) + ": expected key=value, got '" +
                          line + "'");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty())
        throw ConfigError("config line " + std::to_string(number) + ": empty key");
      (*values)[key] = value;
    }
  }

  void parse_file(const std::filesystem::path& path, int depth) {
    std::filesystem::path canonical;
    std::error_code ec;
    canonical = std::filesystem::weakly_canonical(path, ec);
    if (ec) canonical = path;
    if (!open_files.insert(canonical).second)
      throw ConfigError("config include cycle through " + path.string());
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    parse_text(std::move(buffer).str(), path.parent_path(), depth);
    open_files.erase(canonical);
  }
};

}  // namespace

Config Config::from_file(const std::filesystem::path& path) {
  Config config;
  Parser parser{&config.values_, {}};
  parser.parse_file(path, 0);
  return config;
}

Config Config::from_text(const std::string& text, const std::filesystem::path& base_dir) {
  Config config;
  Parser parser{&config.values_, {}};
  parser.parse_text(text, base_dir, 0);
  return config;
}

bool Config::has(const std::string& key) const { return values_.count(key) != 0; }

void Config::set(const std::string& key, std::string value) {
  values_[key] = std::move(value);
}

std::optional<std::string> Config::find(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  return find(key).value_or(fallback);
}

namespace {

double to_double_checked(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse number from '" + text + "'");
  }
}

int to_int_checked(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const long value = std::stol(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    if (value < INT32_MIN || value > INT32_MAX) throw std::out_of_range(text);
    return int(value);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse integer from '" + text + "'");
  }
}

}  // namespace

double Config::get_double(const std::string& key, double fallback) const {
  const auto text = find(key);
  return text ? to_double_checked(key, *text) : fallback;
}

int Config::get_int(const std::string& key, int fallback) const {
  const auto text = find(key);
  return text ? to_int_checked(key, *text) : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  const auto text = find(key);
  if (!text) return fallback;
  std::string word = *text;
  std::transform(word.begin(), word.end(), word.begin(),
                 [](unsigned char c) { return char(std::tolower(c)); });
  if (word == "true" || word == "1" || word == "yes" || word == "on") return true;
  if (word == "false" || word == "0" || word == "no" || word == "off") return false;
  throw ConfigError("config key '" + key + "': cannot parse boolean from '" + *text + "'");
}

std::string Config::require_string(const std::string& key) const {
  const auto text = find(key);
  if (!text) throw ConfigError("config key '" + key + "' is required");
  return *text;
}

double Config::require_double(const std::string& key) const {
  return to_double_checked(key, require_string(key));
}

int Config::require_int(const std::string& key) const {
  return to_int_checked(key, require_string(key));
}

}  // namespace pwinterp

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace pwinterp {

// Flat key=value settings. '#' starts a comment; blank lines are skipped;
//   include <relative-or-absolute path>
// splices another file at that point (relative to the including file), with
// later assignments overriding earlier ones. Include depth is capped at 16
// and cycles are rejected.
class Config {
 public:
  Config() = default;

  static Config from_file(const std::filesystem::path& path);
  // Parses text directly; includes resolve against base_dir.
  static Config from_text(const std::string& text, const std::filesystem::path& base_dir = ".");

  bool has(const std::string& key) const;
  const std::map<std::string, std::string>& values() const { return values_; }

  void set(const std::string& key, std::string value);

  std::optional<std::string> find(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  // Missing key throws ConfigError naming it; so does an unparsable value.
  std::string require_string(const std::string& key) const;
  double require_double(const std::string& key) const;
  int require_int(const std::string& key) const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace pwinterp

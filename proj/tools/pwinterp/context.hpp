#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <pwinterp/config.hpp>

namespace pwtool {

struct CommonFlags {
  std::optional<std::string> config_path;
  std::optional<std::string> out_dir;
};

std::shared_ptr<CommonFlags> add_common(CLI::App* cmd);

// Per-invocation state: the merged configuration, the output directory, and
// the summary entries accumulated while the command runs. Flags beat config
// keys, config keys beat built-in defaults. The summary is written last so a
// failing command leaves no artifacts behind (all writes are atomic).
class RunContext {
 public:
  RunContext(const CommonFlags& common, std::string command);

  double num(const std::optional<double>& flag, const std::string& key, double fallback);
  double num_req(const std::optional<double>& flag, const std::string& key);
  int integer(const std::optional<int>& flag, const std::string& key, int fallback);
  std::uint64_t seed(const std::optional<std::uint64_t>& flag, std::uint64_t fallback);
  std::string str(const std::optional<std::string>& flag, const std::string& key,
                  const std::string& fallback);

  // Input file: resolves the path, records its content hash in the summary.
  std::filesystem::path input(const std::optional<std::string>& flag, const std::string& key);
  std::optional<std::filesystem::path> input_opt(const std::optional<std::string>& flag,
                                                 const std::string& key);

  void put(const std::string& key, const std::string& value);
  void put_num(const std::string& key, double value);
  void put_int(const std::string& key, long long value);
  void put_bool(const std::string& key, bool value);

  // Writes a CSV artifact into the output directory and records it.
  void csv(const std::string& name, const std::vector<std::string>& header,
           const std::vector<std::vector<std::string>>& rows);
  std::filesystem::path artifact_path(const std::string& name) const;

  const pwinterp::Config& config() const { return cfg_; }
  const std::filesystem::path& out_dir() const { return out_; }

  // Emits <command>.summary.txt. Every summary carries the tool version and a
  // seed entry (0 when the command uses no randomness).
  void finish();

 private:
  pwinterp::Config cfg_;
  std::filesystem::path out_;
  std::string command_;
  std::vector<std::pair<std::string, std::string>> entries_;
  bool seed_recorded_ = false;
};

void register_sequence_commands(CLI::App& app);
void register_multiplier_commands(CLI::App& app);
void register_interpolation_commands(CLI::App& app);
void register_control_commands(CLI::App& app);

// Shared by several commands: "a,b,c" -> numbers.
std::vector<double> parse_number_list(const std::string& text, const std::string& what);

}  // namespace pwtool

#include "context.hpp"

#include <cstdlib>
#include <sstream>

#include <pwinterp/errors.hpp>
#include <pwinterp/io.hpp>
#include <pwinterp/version.hpp>

namespace pwtool {

namespace fs = std::filesystem;

std::shared_ptr<CommonFlags> add_common(CLI::App* cmd) {
  auto flags = std::make_shared<CommonFlags>();
  cmd->add_option("--config", flags->config_path, "flat key=value settings file");
  cmd->add_option("--out", flags->out_dir,
                  "output directory (default: $PWINTERP_OUT or the working directory)");
  return flags;
}

RunContext::RunContext(const CommonFlags& common, std::string command)
    : command_(std::move(command)) {
  if (common.config_path) cfg_ = pwinterp::Config::from_file(*common.config_path);
  std::string out;
  if (common.out_dir) {
    out = *common.out_dir;
  } else if (cfg_.has("out")) {
    out = cfg_.require_string("out");
  } else if (const char* env = std::getenv("PWINTERP_OUT"); env && *env) {
    out = env;
  } else {
    out = ".";
  }
  out_ = out;
  std::error_code ec;
  fs::create_directories(out_, ec);
  if (ec) throw pwinterp::OutputError("cannot create output directory " + out_.string());
  put("tool", std::string("pwinterp ") + pwinterp::version_string);
  put("command", command_);
  if (common.config_path) {
    put("config", *common.config_path);
    put("input_hash.config", pwinterp::file_hash_hex(*common.config_path));
  }
}

double RunContext::num(const std::optional<double>& flag, const std::string& key,
                       double fallback) {
  double v = flag ? *flag : cfg_.get_double(key, fallback);
  put_num(key, v);
  return v;
}

double RunContext::num_req(const std::optional<double>& flag, const std::string& key) {
  double v = flag ? *flag : cfg_.require_double(key);
  put_num(key, v);
  return v;
}

int RunContext::integer(const std::optional<int>& flag, const std::string& key, int fallback) {
  int v = flag ? *flag : cfg_.get_int(key, fallback);
  put_int(key, v);
  return v;
}

std::uint64_t RunContext::seed(const std::optional<std::uint64_t>& flag, std::uint64_t fallback) {
  std::uint64_t v = fallback;
  if (flag) {
    v = *flag;
  } else if (auto text = cfg_.find("seed")) {
    std::istringstream in(*text);
    if (!(in >> v)) throw pwinterp::ConfigError("config key 'seed' is not an integer: " + *text);
  }
  put("seed", std::to_string(v));
  seed_recorded_ = true;
  return v;
}

std::string RunContext::str(const std::optional<std::string>& flag, const std::string& key,
                            const std::string& fallback) {
  std::string v = flag ? *flag : cfg_.get_string(key, fallback);
  put(key, v);
  return v;
}

fs::path RunContext::input(const std::optional<std::string>& flag, const std::string& key) {
  auto path = input_opt(flag, key);
  if (!path) throw pwinterp::ConfigError("missing required input '" + key + "'");
  return *path;
}

std::optional<fs::path> RunContext::input_opt(const std::optional<std::string>& flag,
                                              const std::string& key) {
  std::string text;
  if (flag) {
    text = *flag;
  } else if (auto v = cfg_.find(key)) {
    text = *v;
  } else {
    return std::nullopt;
  }
  fs::path path = text;
  put(key, path.string());
  put("input_hash." + key, pwinterp::file_hash_hex(path));
  return path;
}

void RunContext::put(const std::string& key, const std::string& value) {
  entries_.emplace_back(key, value);
}

void RunContext::put_num(const std::string& key, double value) {
  put(key, pwinterp::format_float(value));
}

void RunContext::put_int(const std::string& key, long long value) {
  put(key, std::to_string(value));
}

void RunContext::put_bool(const std::string& key, bool value) { put(key, value ? "1" : "0"); }

fs::path RunContext::artifact_path(const std::string& name) const { return out_ / name; }

void RunContext::csv(const std::string& name, const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
  pwinterp::write_csv(artifact_path(name), header, rows);
  put("artifact." + name, std::to_string(rows.size()) + " rows");
}

void RunContext::finish() {
  if (!seed_recorded_) put("seed", "0");
  std::string text;
  for (const auto& [key, value] : entries_) text += key + " = " + value + "\n";
  pwinterp::atomic_write_text(out_ / (command_ + ".summary.txt"), text);
}

std::vector<double> parse_number_list(const std::string& text, const std::string& what) {
  std::vector<double> values;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw pwinterp::ConfigError(what + ": cannot parse '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos)
      throw pwinterp::ConfigError(what + ": cannot parse '" + item + "'");
    values.push_back(v);
  }
  if (values.empty()) throw pwinterp::ConfigError(what + ": empty list");
  return values;
}

}  // namespace pwtool

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "connections/arena.hpp"

namespace connections {

struct ConfigKey {
  std::string name;  // "section.key"
  std::string description;
};

// Every key accepted by files and --set overrides, in help order.
const std::vector<ConfigKey>& config_keys();

// Sets one key from its text form. Throws ConfigError naming the key for an
// unknown key or a value of the wrong type.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

// `key = value` lines; blank lines and lines starting with '#' are skipped.
void apply_config_stream(ExperimentConfig& config, std::istream& in, const std::string& origin);

// "key=value" as given on the command line.
void apply_override(ExperimentConfig& config, std::string_view assignment);

// Defaults, then the file, then the overrides; validated.
ExperimentConfig load_config(const std::optional<std::filesystem::path>& path,
                             const std::vector<std::string>& overrides = {});

// The effective configuration as a loadable file.
void write_config(std::ostream& out, const ExperimentConfig& config);

}  // namespace connections

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "stringnet/model.hpp"

namespace stringnet {

/// Malformed scenario document (syntax, missing or unknown fields, wrong types).
class ConfigParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a JSON scenario. Field names are the snake_case ScenarioConfig
/// member names; unknown fields are rejected at every nesting level.
/// Does not run validate_config.
[[nodiscard]] ScenarioConfig parse_config(std::string_view json_text);

/// Serializes to JSON. parse_config(dump_config(c)) == c.
[[nodiscard]] std::string dump_config(const ScenarioConfig &cfg);

[[nodiscard]] ScenarioConfig load_config(const std::filesystem::path &path);
void save_config(const ScenarioConfig &cfg, const std::filesystem::path &path);

}  // namespace stringnet

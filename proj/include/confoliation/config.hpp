#pragma once

#include <confoliation/construction.hpp>

#include <json.hpp>

#include <string>

namespace confoliation {

struct RunConfig {
  AssemblyConfig assembly;
  std::string out_dir = ".";
  uint64_t seed = 20240915;
  bool expect_unsupported = false;

  nlohmann::json echo() const;
};

// Parses and validates; throws std::invalid_argument on unknown keys or
// invalid values.
RunConfig parse_config(const nlohmann::json &j);
RunConfig load_config_file(const std::string &path);

} // namespace confoliation

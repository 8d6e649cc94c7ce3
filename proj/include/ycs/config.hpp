#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ycs/experiment.hpp"

namespace ycs {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses the flat `key = value` config format (# starts a comment).
// `overrides` are extra key=value entries applied on top of the file.
// Missing optional keys take the standard defaults; unknown keys,
// unparsable values and out-of-range values throw ConfigError naming
// the key and the legal range.
ExperimentConfig parse_config(const std::string& text,
                              const std::vector<std::string>& overrides = {});

// The effective configuration as (key, value) pairs in canonical order,
// covering every config key. Values round-trip through parse_config.
std::vector<std::pair<std::string, std::string>> config_items(
    const ExperimentConfig& config);

}  // namespace ycs

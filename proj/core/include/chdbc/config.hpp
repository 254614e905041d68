// Flat key=value config files for the CLI.

#ifndef CHDBC_CONFIG_HPP
#define CHDBC_CONFIG_HPP

#include <string>

#include "chdbc/experiments.hpp"

namespace chdbc {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses a flat key=value file ('#' starts a comment, blank lines ignored).
// Unknown keys, type errors and constraint violations are hard errors that
// name the offending key. See README for the key list.
ExperimentConfig parse_config(const std::string& path);

// Same parser over an in-memory string (tests).
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin = "<string>");

}  // namespace chdbc

#endif

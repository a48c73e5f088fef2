#pragma once

#include <string>

#include "swipt/config.hpp"

namespace swipt {

// Parses the flat key/value scenario format:
//
//   # comment
//   [system]
//   M = 16
//   K_I = 2
//   kappa_default = inf        ; "inf" selects the pure line-of-sight channel
//   kappa_I = 0, inf           ; comma-separated per-user lists
//   sigma0_dbm = -84           ; alternative to sigma0_sq (watts)
//   [eh]
//   a = 150
//
// Sections are [system] (default) and [eh]; keys mirror the SystemConfig and
// EhParams field names. Unknown sections or keys, malformed numbers, and
// values rejected by SystemConfig::validate() raise ConfigError.
SystemConfig parse_config_text(const std::string& text);

// Reads the file and delegates to parse_config_text; unreadable path raises
// ConfigError.
SystemConfig parse_config_file(const std::string& path);

}  // namespace swipt

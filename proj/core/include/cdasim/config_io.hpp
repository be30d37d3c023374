#pragma once

#include <string>

#include "cdasim/session.hpp"

namespace cdasim {

// Parses a session config from JSON text. Unknown keys are rejected at the
// top level; the result is validated with validate_session_config.
SessionConfig parse_session_config(const std::string& json_text);

// Reads and parses the file at `path`.
SessionConfig load_session_config(const std::string& path);

// Round-trips the config back to pretty-printed JSON.
std::string session_config_to_json(const SessionConfig& cfg);

}  // namespace cdasim

#pragma once

#include <optional>
#include <string>

#include "ddr/model.hpp"
#include "ddr/response.hpp"

namespace ddr {

// One run of the tool: physical parameters plus scan window, method
// selection and optional output path, all from a single flat JSON
// object. Unknown keys are rejected so typos cannot silently fall back
// to defaults.
struct RunConfig {
    RawParams raw;
    ScanGrid grid;
    MethodSelection method = MethodSelection::Both;
    std::optional<std::string> out;
};

// Parses a config from JSON text. Throws ConfigError on malformed
// JSON, unknown keys, wrong value types, or an unusable scan window.
RunConfig parse_config_text(const std::string& text);

// Reads and parses a config file. Throws ConfigError when the file
// cannot be read, plus everything parse_config_text throws.
RunConfig load_config(const std::string& path);

// Runs validate_params and returns the resolved parameters, throwing
// ConfigError with the collected issues when they do not pass.
SystemParams require_valid_params(const RunConfig& cfg);

const char* method_name(MethodSelection sel);

} // namespace ddr

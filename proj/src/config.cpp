#include "ddr/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ddr/errors.hpp"

namespace ddr {

namespace {

double number_or_throw(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
    return v.get<double>();
}

int integer_or_throw(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError("config key '" + key + "' must be an integer");
    const double d = v.get<double>();
    if (std::floor(d) != d || std::abs(d) > 1e9) {
        throw ConfigError("config key '" + key + "' must be an integer");
    }
    return static_cast<int>(d);
}

} // namespace

RunConfig parse_config_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");

    RunConfig cfg;
    for (const auto& [key, value] : doc.items()) {
        if (key == "omega") {
            cfg.raw.omega = number_or_throw(value, key);
        } else if (key == "omega_c") {
            cfg.raw.omega_c = number_or_throw(value, key);
        } else if (key == "probe") {
            cfg.raw.probe = number_or_throw(value, key);
        } else if (key == "delta0") {
            cfg.raw.delta0 = number_or_throw(value, key);
        } else if (key == "delta_c") {
            cfg.raw.delta_c = number_or_throw(value, key);
        } else if (key == "gamma_b") {
            cfg.raw.gamma_b = number_or_throw(value, key);
        } else if (key == "gamma_c") {
            cfg.raw.gamma_c = number_or_throw(value, key);
        } else if (key == "gamma_d") {
            cfg.raw.gamma_d = number_or_throw(value, key);
        } else if (key == "gamma_0") {
            cfg.raw.gamma_0 = number_or_throw(value, key);
        } else if (key == "r_pump") {
            cfg.raw.r_pump = number_or_throw(value, key);
        } else if (key == "r_b") {
            cfg.raw.r_b = number_or_throw(value, key);
        } else if (key == "r_c") {
            cfg.raw.r_c = number_or_throw(value, key);
        } else if (key == "r_d") {
            cfg.raw.r_d = number_or_throw(value, key);
        } else if (key == "eta") {
            cfg.raw.eta = number_or_throw(value, key);
        } else if (key == "delta_min") {
            cfg.grid.delta_min = number_or_throw(value, key);
        } else if (key == "delta_max") {
            cfg.grid.delta_max = number_or_throw(value, key);
        } else if (key == "points") {
            cfg.grid.points = integer_or_throw(value, key);
        } else if (key == "method") {
            if (!value.is_string()) throw ConfigError("config key 'method' must be a string");
            const std::string m = value.get<std::string>();
            if (m == "analytic") {
                cfg.method = MethodSelection::Analytic;
            } else if (m == "numeric") {
                cfg.method = MethodSelection::Numeric;
            } else if (m == "both") {
                cfg.method = MethodSelection::Both;
            } else {
                throw ConfigError("config key 'method' must be analytic, numeric or both");
            }
        } else if (key == "out") {
            if (!value.is_string()) throw ConfigError("config key 'out' must be a string");
            cfg.out = value.get<std::string>();
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }

    if (!std::isfinite(cfg.grid.delta_min) || !std::isfinite(cfg.grid.delta_max)) {
        throw ConfigError("scan window must be finite");
    }
    if (!cfg.grid.valid()) {
        throw ConfigError("scan window needs delta_min < delta_max and points >= 2");
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

SystemParams require_valid_params(const RunConfig& cfg) {
    const ParamValidation v = validate_params(cfg.raw);
    if (v.ok()) return *v.params;
    std::string msg = "invalid parameters";
    for (const auto& issue : v.issues) msg += "\n  " + issue.message;
    throw ConfigError(msg);
}

const char* method_name(MethodSelection sel) {
    switch (sel) {
        case MethodSelection::Analytic: return "analytic";
        case MethodSelection::Numeric: return "numeric";
        default: return "both";
    }
}

} // namespace ddr

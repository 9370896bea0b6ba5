#pragma once

// Flat key-value run configuration:
//
//   # hemodynamic fixture
//   rho_f = 1
//   rho_s = 1.1
//   h_s = 0.1
//   ...
//
// Keys: rho_f, rho_s, h_s, beta, psi, radius, length, dt, n_modes, n_steps, alpha.
// `key = value`, `key: value` and `key value` are accepted; `#` starts a comment.

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rnstab/model.hpp"

namespace rnstab {

/// File-system failures; the CLI maps these to exit code 2.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    PhysicalParams params = fixture_params();
    Discretization disc = fixture_discretization();
    double alpha = 1.0e3;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline double parse_double(std::string_view key, std::string_view text) {
    const std::string s(trim(text));
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (s.empty() || used != s.size()) throw InvalidParameter("bad number for " + std::string(key) + ": '" + s + "'");
    return value;
}

inline int parse_int(std::string_view key, std::string_view text) {
    const auto s = trim(text);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw InvalidParameter("bad integer for " + std::string(key) + ": '" + std::string(s) + "'");
    return value;
}

}  // namespace detail

/// Sets one configuration key; unknown keys are rejected.
inline void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
    auto& p = cfg.params;
    if (key == "rho_f") p.rho_f = detail::parse_double(key, value);
    else if (key == "rho_s") p.rho_s = detail::parse_double(key, value);
    else if (key == "h_s") p.h_s = detail::parse_double(key, value);
    else if (key == "beta") p.beta = detail::parse_double(key, value);
    else if (key == "psi") p.psi = detail::parse_double(key, value);
    else if (key == "radius") p.radius = detail::parse_double(key, value);
    else if (key == "length") p.length = detail::parse_double(key, value);
    else if (key == "dt") cfg.disc.dt = detail::parse_double(key, value);
    else if (key == "n_modes") cfg.disc.n_modes = detail::parse_int(key, value);
    else if (key == "n_steps") cfg.disc.n_steps = detail::parse_int(key, value);
    else if (key == "alpha") cfg.alpha = detail::parse_double(key, value);
    else throw InvalidParameter("unknown configuration key: " + std::string(key));
}

[[nodiscard]] inline std::map<std::string, std::string> parse_key_values(std::istream& in) {
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view(line);
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = detail::trim(view);
        if (view.empty()) continue;
        auto sep = view.find_first_of("=:");
        if (sep == std::string_view::npos) sep = view.find_first_of(" \t");
        if (sep == std::string_view::npos)
            throw InvalidParameter("line " + std::to_string(lineno) + ": expected 'key = value'");
        const auto key = detail::trim(view.substr(0, sep));
        const auto value = detail::trim(view.substr(sep + 1));
        if (key.empty() || value.empty())
            throw InvalidParameter("line " + std::to_string(lineno) + ": expected 'key = value'");
        out[std::string(key)] = std::string(value);
    }
    return out;
}

inline void apply_key_values(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
    for (const auto& [key, value] : kv) apply_setting(cfg, key, value);
}

/// Reads a configuration file on top of the fixture defaults.
[[nodiscard]] inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    RunConfig cfg;
    apply_key_values(cfg, parse_key_values(in));
    return cfg;
}

}  // namespace rnstab

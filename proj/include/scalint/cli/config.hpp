#pragma once
// Run configuration for the command-line tool: flat `key = value` files with
// command-line overrides, plus validation of every numeric field before any
// computation starts.

#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "scalint/design.hpp"
#include "scalint/errors.hpp"
#include "scalint/grid.hpp"
#include "scalint/riccati.hpp"

namespace scalint::cli {

/// Malformed or out-of-range configuration. Maps to exit status 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

enum class Command { Generate, Verify, Design, Sweep, Check2d };
enum class OutputFormat { Csv, Json };

inline const char* to_string(Command c) {
    switch (c) {
        case Command::Generate: return "generate";
        case Command::Verify: return "verify";
        case Command::Design: return "design";
        case Command::Sweep: return "sweep";
        case Command::Check2d: return "check2d";
    }
    return "?";
}

inline Command parse_command(const std::string& s) {
    if (s == "generate") return Command::Generate;
    if (s == "verify") return Command::Verify;
    if (s == "design") return Command::Design;
    if (s == "sweep") return Command::Sweep;
    if (s == "check2d") return Command::Check2d;
    throw ConfigError("unknown command '" + s + "'");
}

inline constexpr double kDefaultHalfWidth = 12.0;
inline constexpr std::size_t kDefaultGridPoints = 3001;

struct RunConfig {
    Command command = Command::Verify;
    IntertwiningParams params;
    // Grid bounds; when unset the base interval [-12, 12] is used and dilated by e^{-lambda}.
    std::optional<double> grid_min;
    std::optional<double> grid_max;
    std::size_t grid_n = kDefaultGridPoints;
    std::optional<DesignTarget> design;
    std::size_t k_levels = 6;
    double tol = 1e-3;
    std::string output_path;  // empty: stdout
    OutputFormat output_format = OutputFormat::Csv;
    std::string preset;
    std::vector<double> energies;  // sweep samples when no preset
    // Second axis for check2d; defaults to the first axis parameters.
    std::optional<double> energy_y;
    std::optional<double> lambda_y;
    std::optional<double> nu_y;
    bool force = false;         // skip parameter bounds (negative controls)
    bool chain_verify = false;  // design: also run the spectrum check

    IntertwiningParams axis_y_params() const {
        return {lambda_y.value_or(params.lambda), energy_y.value_or(params.energy), nu_y.value_or(params.nu)};
    }

    /// The grid on which V_2 lives: explicit bounds when given, otherwise the
    /// base interval dilated by e^{-lambda}.
    GridSpec partner_grid() const {
        if (grid_min || grid_max) {
            return GridSpec(grid_min.value_or(-kDefaultHalfWidth), grid_max.value_or(kDefaultHalfWidth), grid_n);
        }
        return base_grid().dilated(params.lambda);
    }

    GridSpec base_grid() const {
        if (grid_min || grid_max) {
            return GridSpec(grid_min.value_or(-kDefaultHalfWidth), grid_max.value_or(kDefaultHalfWidth), grid_n);
        }
        return GridSpec(-kDefaultHalfWidth, kDefaultHalfWidth, grid_n);
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
        throw ConfigError("'" + key + "': expected a number, got '" + text + "'");
    }
    return v;
}

inline std::size_t parse_count(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    unsigned long long v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
        throw ConfigError("'" + key + "': expected a positive integer, got '" + text + "'");
    }
    return static_cast<std::size_t>(v);
}

inline bool parse_bool(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "no") return false;
    throw ConfigError("'" + key + "': expected true/false, got '" + text + "'");
}

inline std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace detail

using KeyValues = std::map<std::string, std::string>;

/// Parses `key = value` lines; `#` starts a comment.
inline KeyValues parse_key_values(const std::string& text) {
    KeyValues out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        out[detail::trim(line.substr(0, eq))] = detail::trim(line.substr(eq + 1));
    }
    return out;
}

/// Applies known keys onto `cfg`; unknown keys are rejected.
inline void apply(RunConfig& cfg, const KeyValues& kv) {
    auto& p = cfg.params;
    auto design = [&cfg]() -> DesignTarget& {
        if (!cfg.design) cfg.design = DesignTarget{};
        return *cfg.design;
    };
    for (const auto& [key, value] : kv) {
        if (key == "command") cfg.command = parse_command(detail::trim(value));
        else if (key == "lambda") p.lambda = detail::parse_double(key, value);
        else if (key == "energy") p.energy = detail::parse_double(key, value);
        else if (key == "nu") p.nu = detail::parse_double(key, value);
        else if (key == "e0") design().ground_level = detail::parse_double(key, value);
        else if (key == "kappa") design().spacing_factor = detail::parse_double(key, value);
        else if (key == "grid-min") cfg.grid_min = detail::parse_double(key, value);
        else if (key == "grid-max") cfg.grid_max = detail::parse_double(key, value);
        else if (key == "grid-n") cfg.grid_n = detail::parse_count(key, value);
        else if (key == "k-levels") cfg.k_levels = detail::parse_count(key, value);
        else if (key == "tol") cfg.tol = detail::parse_double(key, value);
        else if (key == "out") cfg.output_path = detail::trim(value);
        else if (key == "format") {
            const auto f = detail::trim(value);
            if (f == "csv") cfg.output_format = OutputFormat::Csv;
            else if (f == "json") cfg.output_format = OutputFormat::Json;
            else throw ConfigError("'format': expected csv or json, got '" + f + "'");
        }
        else if (key == "preset") cfg.preset = detail::trim(value);
        else if (key == "energies") {
            cfg.energies.clear();
            std::istringstream in(value);
            std::string item;
            while (std::getline(in, item, ',')) {
                if (!detail::trim(item).empty()) cfg.energies.push_back(detail::parse_double(key, item));
            }
        }
        else if (key == "energy-y") cfg.energy_y = detail::parse_double(key, value);
        else if (key == "lambda-y") cfg.lambda_y = detail::parse_double(key, value);
        else if (key == "nu-y") cfg.nu_y = detail::parse_double(key, value);
        else if (key == "force") cfg.force = detail::parse_bool(key, value);
        else if (key == "chain-verify") cfg.chain_verify = detail::parse_bool(key, value);
        else throw ConfigError("unknown configuration key '" + key + "'");
    }
}

/// Inverse of parse_key_values + apply for every field that differs from the
/// defaults or is optional-and-set.
inline std::string serialize(const RunConfig& cfg) {
    std::ostringstream out;
    auto d = [](double v) { return detail::format_double(v); };
    out << "command = " << to_string(cfg.command) << '\n';
    out << "lambda = " << d(cfg.params.lambda) << '\n';
    out << "energy = " << d(cfg.params.energy) << '\n';
    out << "nu = " << d(cfg.params.nu) << '\n';
    if (cfg.design) {
        out << "e0 = " << d(cfg.design->ground_level) << '\n';
        out << "kappa = " << d(cfg.design->spacing_factor) << '\n';
    }
    if (cfg.grid_min) out << "grid-min = " << d(*cfg.grid_min) << '\n';
    if (cfg.grid_max) out << "grid-max = " << d(*cfg.grid_max) << '\n';
    out << "grid-n = " << cfg.grid_n << '\n';
    out << "k-levels = " << cfg.k_levels << '\n';
    out << "tol = " << d(cfg.tol) << '\n';
    if (!cfg.output_path.empty()) out << "out = " << cfg.output_path << '\n';
    out << "format = " << (cfg.output_format == OutputFormat::Csv ? "csv" : "json") << '\n';
    if (!cfg.preset.empty()) out << "preset = " << cfg.preset << '\n';
    if (!cfg.energies.empty()) {
        out << "energies = ";
        for (std::size_t i = 0; i < cfg.energies.size(); ++i) out << (i ? "," : "") << d(cfg.energies[i]);
        out << '\n';
    }
    if (cfg.energy_y) out << "energy-y = " << d(*cfg.energy_y) << '\n';
    if (cfg.lambda_y) out << "lambda-y = " << d(*cfg.lambda_y) << '\n';
    if (cfg.nu_y) out << "nu-y = " << d(*cfg.nu_y) << '\n';
    out << "force = " << (cfg.force ? "true" : "false") << '\n';
    out << "chain-verify = " << (cfg.chain_verify ? "true" : "false") << '\n';
    return out.str();
}

inline void check_oscillator_bounds(const IntertwiningParams& p, const char* label) {
    if (!std::isfinite(p.lambda)) throw ConfigError(std::string(label) + "lambda must be finite");
    if (!(p.energy < 0.5)) {
        throw ConfigError(std::string(label) + "energy violates E < 1/2 (got " + detail::format_double(p.energy) + ")");
    }
    if (!(std::abs(p.nu) < 1.0)) {
        throw ConfigError(std::string(label) + "nu violates |nu| < 1 (got " + detail::format_double(p.nu) + ")");
    }
}

/// Checks every numeric field against the preconditions of the command.
inline void validate(const RunConfig& cfg) {
    if (cfg.grid_n < 41) throw ConfigError("grid-n must be at least 41");
    if (cfg.grid_min && cfg.grid_max && !(*cfg.grid_min < *cfg.grid_max)) throw ConfigError("grid-min must be < grid-max");
    if (cfg.k_levels < 1 || cfg.k_levels > cfg.grid_n) throw ConfigError("k-levels must lie in [1, grid-n]");
    if (!(cfg.tol > 0.0)) throw ConfigError("tol must be positive");
    switch (cfg.command) {
        case Command::Generate:
        case Command::Verify:
            if (!cfg.force) check_oscillator_bounds(cfg.params, "");
            break;
        case Command::Design:
            if (!cfg.design) throw ConfigError("design needs --e0 and --kappa");
            if (!(std::abs(cfg.params.nu) < 1.0)) throw ConfigError("nu violates |nu| < 1");
            break;
        case Command::Sweep:
            if (cfg.preset.empty() && cfg.energies.empty()) throw ConfigError("sweep needs --preset figure1 or --energies");
            if (!cfg.preset.empty() && cfg.preset != "figure1") throw ConfigError("unknown preset '" + cfg.preset + "'");
            if (!(std::abs(cfg.params.nu) < 1.0)) throw ConfigError("nu violates |nu| < 1");
            break;
        case Command::Check2d:
            check_oscillator_bounds(cfg.params, "x axis: ");
            check_oscillator_bounds(cfg.axis_y_params(), "y axis: ");
            break;
    }
}

}  // namespace scalint::cli

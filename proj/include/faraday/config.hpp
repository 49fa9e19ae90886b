#pragma once

/*
 * config.hpp: line-oriented `key = value [unit]` parameter files.
 *
 *   # NV preset
 *   kappa_i  = 28 MHz
 *   G        = 0.1 kappa_i
 *   T        = 70 K
 *
 * Units: Hz, kHz, MHz, GHz for rates (or `kappa_i` for multiples of kappa_i),
 * K for T, W or nW for P_in, s for tau_m. A bare number is read in SI units.
 * Unset keys default to the baseline used by figure 3: kappa_ex = G = kappa_i,
 * gamma = 1e-3 kappa_i, all detunings and shifts 0, omega_r = 2.8 GHz,
 * T = 70 K, P_in = 1 nW, tau_m = 1 us. kappa_i itself has no default.
 */

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "faraday/multiphoton.hpp"
#include "faraday/system_params.hpp"

namespace faraday {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ValueKind { rate, temperature, power, time };

struct KeyInfo {
    std::string_view name;
    ValueKind kind;
};

inline constexpr std::array<KeyInfo, 12> kConfigKeys{{
    {"kappa_i", ValueKind::rate},
    {"kappa_ex", ValueKind::rate},
    {"G", ValueKind::rate},
    {"gamma", ValueKind::rate},
    {"Delta_r", ValueKind::rate},
    {"Delta_q", ValueKind::rate},
    {"A", ValueKind::rate},
    {"delta", ValueKind::rate},
    {"omega_r", ValueKind::rate},
    {"T", ValueKind::temperature},
    {"P_in", ValueKind::power},
    {"tau_m", ValueKind::time},
}};

[[nodiscard]] inline std::optional<ValueKind> key_kind(std::string_view key) {
    for (const auto& k : kConfigKeys) {
        if (k.name == key) return k.kind;
    }
    return std::nullopt;
}

/// Fully resolved parameters, all in SI units.
struct ResolvedConfig {
    SystemParams params;
    double T = 70.0;
    double P_in = 1e-9;
    double tau_m = 1e-6;

    [[nodiscard]] ThermalEnvironment environment() const { return make_environment(T, params.omega_r); }
    [[nodiscard]] ProbeSpec probe() const { return make_probe(P_in, tau_m, params.omega_r); }
};

[[nodiscard]] inline std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Reads or writes one field of a resolved config by key name (SI units).
[[nodiscard]] inline double get_value(const ResolvedConfig& c, std::string_view key) {
    const auto& p = c.params;
    if (key == "kappa_i") return p.kappa_i;
    if (key == "kappa_ex") return p.kappa_ex;
    if (key == "G") return p.G;
    if (key == "gamma") return p.gamma;
    if (key == "Delta_r") return p.Delta_r;
    if (key == "Delta_q") return p.Delta_q;
    if (key == "A") return p.A;
    if (key == "delta") return p.delta;
    if (key == "omega_r") return p.omega_r;
    if (key == "T") return c.T;
    if (key == "P_in") return c.P_in;
    if (key == "tau_m") return c.tau_m;
    throw ConfigError("unknown parameter '" + std::string(key) + "'");
}

inline void set_value(ResolvedConfig& c, std::string_view key, double v) {
    auto& p = c.params;
    if (key == "kappa_i") p.kappa_i = v;
    else if (key == "kappa_ex") p.kappa_ex = v;
    else if (key == "G") p.G = v;
    else if (key == "gamma") p.gamma = v;
    else if (key == "Delta_r") p.Delta_r = v;
    else if (key == "Delta_q") p.Delta_q = v;
    else if (key == "A") p.A = v;
    else if (key == "delta") p.delta = v;
    else if (key == "omega_r") p.omega_r = v;
    else if (key == "T") c.T = v;
    else if (key == "P_in") c.P_in = v;
    else if (key == "tau_m") c.tau_m = v;
    else throw ConfigError("unknown parameter '" + std::string(key) + "'");
}

/// Key/value pairs (SI) in canonical key order, for manifests.
[[nodiscard]] inline std::vector<std::pair<std::string, std::string>> config_echo(const ResolvedConfig& c) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& k : kConfigKeys) out.emplace_back(std::string(k.name), format_number(get_value(c, k.name)));
    return out;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

struct RawValue {
    double number = 0.0;
    std::string unit;
};

struct RawEntry {
    std::string key;
    RawValue value;
    int line = 0;
};

inline RawValue parse_raw_value(std::string_view text, const std::string& key, int line) {
    text = trim(text);
    const auto where = [&] { return " (line " + std::to_string(line) + ", key '" + key + "')"; };
    if (text.empty()) throw ConfigError("missing value" + where());
    RawValue v;
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    if (*begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, v.number);
    if (ec != std::errc{} || !std::isfinite(v.number)) {
        throw ConfigError("non-numeric value '" + std::string(text) + "'" + where());
    }
    v.unit = std::string(trim(std::string_view(ptr, static_cast<std::size_t>(end - ptr))));
    if (v.unit.find_first_of(" \t") != std::string::npos) {
        throw ConfigError("unexpected trailing text '" + v.unit + "'" + where());
    }
    return v;
}

inline RawEntry parse_line(std::string_view line, int lineno) {
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError("expected 'key = value' on line " + std::to_string(lineno));
    }
    RawEntry e;
    e.key = std::string(trim(line.substr(0, eq)));
    e.line = lineno;
    if (!key_kind(e.key)) {
        throw ConfigError("unknown key '" + e.key + "' on line " + std::to_string(lineno));
    }
    e.value = parse_raw_value(line.substr(eq + 1), e.key, lineno);
    return e;
}

/// SI multiplier for a unit, or nullopt for the kappa_i-relative unit.
inline std::optional<double> unit_factor(ValueKind kind, const std::string& unit, const std::string& key) {
    static const std::map<std::string, std::pair<ValueKind, double>> units{
        {"Hz", {ValueKind::rate, 1.0}},          {"kHz", {ValueKind::rate, 1e3}},
        {"MHz", {ValueKind::rate, 1e6}},         {"GHz", {ValueKind::rate, 1e9}},
        {"K", {ValueKind::temperature, 1.0}},    {"W", {ValueKind::power, 1.0}},
        {"nW", {ValueKind::power, 1e-9}},        {"s", {ValueKind::time, 1.0}},
    };
    if (unit.empty()) return 1.0;
    if (unit == "kappa_i") {
        if (kind != ValueKind::rate || key == "kappa_i" || key == "omega_r") {
            throw ConfigError("unit 'kappa_i' is not allowed for key '" + key + "'");
        }
        return std::nullopt;
    }
    const auto it = units.find(unit);
    if (it == units.end()) throw ConfigError("unknown unit '" + unit + "' for key '" + key + "'");
    if (it->second.first != kind) throw ConfigError("unit '" + unit + "' does not apply to key '" + key + "'");
    return it->second.second;
}

}  // namespace detail

/// Parses a config text, then applies `overrides` (each `key = value [unit]`,
/// '=' optionally without spaces). Later overrides replace earlier values.
[[nodiscard]] inline ResolvedConfig parse_config(std::string_view text,
                                                 const std::vector<std::string>& overrides = {}) {
    std::map<std::string, detail::RawEntry> entries;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv = line;
        if (const auto hash = sv.find('#'); hash != std::string_view::npos) sv = sv.substr(0, hash);
        sv = detail::trim(sv);
        if (sv.empty()) continue;
        auto e = detail::parse_line(sv, lineno);
        if (entries.count(e.key)) {
            throw ConfigError("duplicate key '" + e.key + "' on line " + std::to_string(lineno));
        }
        entries[e.key] = std::move(e);
    }
    for (const auto& o : overrides) {
        auto e = detail::parse_line(detail::trim(o), 0);
        entries[e.key] = std::move(e);
    }

    bool relative_used = false;
    for (const auto& [key, e] : entries) relative_used |= e.value.unit == "kappa_i";
    const auto ki = entries.find("kappa_i");
    if (ki == entries.end()) {
        throw ConfigError(relative_used ? "kappa_i-relative unit used but kappa_i is not set"
                                        : "missing kappa_i");
    }

    ResolvedConfig c;
    const double kappa_i = ki->second.value.number * *detail::unit_factor(ValueKind::rate, ki->second.value.unit, "kappa_i");
    c.params = baseline_params(kappa_i);
    c.params.omega_r = 2.8e9;
    for (const auto& [key, e] : entries) {
        const auto kind = *key_kind(key);
        const auto factor = detail::unit_factor(kind, e.value.unit, key);
        set_value(c, key, e.value.number * (factor ? *factor : kappa_i));
    }
    try {
        validate(c.params);
    } catch (const std::invalid_argument& err) {
        throw ConfigError(err.what());
    }
    if (c.T < 0.0) throw ConfigError("T must be >= 0");
    if (c.P_in < 0.0 || c.tau_m < 0.0) throw ConfigError("P_in and tau_m must be >= 0");
    return c;
}

}  // namespace faraday

#pragma once

// CSV tables with a `# `-prefixed manifest header block.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "faraday/config.hpp"
#include "faraday/constants.hpp"

namespace faraday {

inline constexpr const char* kVersion = "0.1.0";

/// Full-precision text for a double; non-finite values become "nan", "inf", "-inf".
[[nodiscard]] inline std::string format_cell(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return format_number(v);
}

[[nodiscard]] inline std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

struct ClaimRow {
    std::string id;
    std::string description;
    std::string computed;
    std::string reference;
    std::string tolerance;
    bool pass = false;
};

struct RunManifest {
    std::vector<std::pair<std::string, std::string>> entries;
    std::vector<ClaimRow> claims;

    void add(std::string key, std::string value) { entries.emplace_back(std::move(key), std::move(value)); }

    [[nodiscard]] bool all_pass() const {
        for (const auto& c : claims) {
            if (!c.pass) return false;
        }
        return true;
    }
};

[[nodiscard]] inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Manifest with tool version, conventions, constants and the config echo.
[[nodiscard]] inline RunManifest make_manifest(const std::string& job, const ResolvedConfig* config) {
    RunManifest m;
    m.add("manifest", job);
    m.add("tool", std::string("faraday ") + kVersion);
    m.add("timestamp", utc_timestamp());
    m.add("conventions", kConventionNotes);
    m.add("const.mu_B_ge", format_number(PhysicalConstants::mu_B_ge) + " Hz/T");
    m.add("const.hbar", format_number(PhysicalConstants::hbar) + " J s");
    m.add("const.k_B", format_number(PhysicalConstants::k_B) + " J/K");
    if (config) {
        for (auto& [k, v] : config_echo(*config)) m.add("config." + k, v);
    }
    return m;
}

inline void write_manifest(std::ostream& os, const RunManifest& m) {
    for (const auto& [k, v] : m.entries) os << "# " << k << ": " << v << '\n';
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(const std::vector<double>& values) {
        std::vector<std::string> r;
        r.reserve(values.size());
        for (double v : values) r.push_back(format_cell(v));
        rows.push_back(std::move(r));
    }
};

inline void write_csv(std::ostream& os, const RunManifest& m, const Table& t) {
    write_manifest(os, m);
    auto write_row = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) os << ',';
            os << csv_escape(r[i]);
        }
        os << '\n';
    };
    write_row(t.columns);
    for (const auto& r : t.rows) write_row(r);
}

[[nodiscard]] inline std::string to_csv(const RunManifest& m, const Table& t) {
    std::ostringstream os;
    write_csv(os, m, t);
    return os.str();
}

/// Parsed CSV: comment lines (without the "# " prefix), header and rows.
struct ParsedCsv {
    std::vector<std::string> comments;
    Table table;
};

[[nodiscard]] inline ParsedCsv parse_csv(std::istream& is) {
    ParsedCsv out;
    std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    std::size_t pos = 0;
    bool header_done = false;
    while (pos < text.size()) {
        if (!header_done && text[pos] == '#') {
            const auto nl = text.find('\n', pos);
            const auto end = nl == std::string::npos ? text.size() : nl;
            std::string line = text.substr(pos, end - pos);
            out.comments.push_back(line.rfind("# ", 0) == 0 ? line.substr(2) : line.substr(1));
            pos = end + 1;
            continue;
        }
        std::vector<std::string> row;
        std::string field;
        bool quoted = false;
        for (;;) {
            if (pos >= text.size()) {
                row.push_back(field);
                break;
            }
            const char ch = text[pos++];
            if (quoted) {
                if (ch == '"') {
                    if (pos < text.size() && text[pos] == '"') {
                        field += '"';
                        ++pos;
                    } else {
                        quoted = false;
                    }
                } else {
                    field += ch;
                }
            } else if (ch == '"') {
                quoted = true;
            } else if (ch == ',') {
                row.push_back(std::move(field));
                field.clear();
            } else if (ch == '\n') {
                row.push_back(std::move(field));
                break;
            } else {
                field += ch;
            }
        }
        if (!header_done) {
            out.table.columns = std::move(row);
            header_done = true;
        } else {
            out.table.rows.push_back(std::move(row));
        }
    }
    return out;
}

/// Drops `# timestamp:` lines so that reruns can be compared byte for byte.
[[nodiscard]] inline std::string strip_timestamps(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::string out;
    while (std::getline(in, line)) {
        if (line.rfind("# timestamp:", 0) == 0) continue;
        out += line;
        out += '\n';
    }
    return out;
}

}  // namespace faraday

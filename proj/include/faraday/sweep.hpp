#pragma once

/*
 * sweep.hpp: one- and two-axis parameter sweeps over any config key.
 *
 * Cells are evaluated in parallel and written back by index, so row order is
 * axis-major (first axis outermost) and independent of the worker count.
 * Cells whose evaluation throws or is non-finite are emitted as nan with flag 1.
 */

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <functional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "faraday/config.hpp"
#include "faraday/csv.hpp"
#include "faraday/multiphoton.hpp"
#include "faraday/single_photon.hpp"

namespace faraday {

[[nodiscard]] inline unsigned default_jobs() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

/// Calls fn(i) for i in [0, n) on `jobs` threads. The first exception is rethrown.
inline void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
        pool.emplace_back([&, w] {
            (void)w;
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

enum class Quantity { P_V, P_H, P_empty, F_I, F_IV, phi_F, sens_sp, sens_mp };

inline constexpr std::array<std::pair<std::string_view, Quantity>, 8> kQuantities{{
    {"P_V", Quantity::P_V},
    {"P_H", Quantity::P_H},
    {"P_empty", Quantity::P_empty},
    {"F_I", Quantity::F_I},
    {"F_IV", Quantity::F_IV},
    {"phi_F", Quantity::phi_F},
    {"sens_sp", Quantity::sens_sp},
    {"sens_mp", Quantity::sens_mp},
}};

[[nodiscard]] inline Quantity parse_quantity(std::string_view name) {
    for (const auto& [n, q] : kQuantities) {
        if (n == name) return q;
    }
    throw ConfigError("unknown quantity '" + std::string(name) + "'");
}

[[nodiscard]] inline std::string_view quantity_name(Quantity q) {
    for (const auto& [n, v] : kQuantities) {
        if (v == q) return n;
    }
    return "?";
}

/// One cell. F_I and F_IV are in (mu_B g_e / kappa_i)^2 units; sensitivities in T/sqrt(Hz).
[[nodiscard]] inline double evaluate_quantity(const ResolvedConfig& c, Quantity q) {
    const auto& p = c.params;
    switch (q) {
        case Quantity::P_V: return outcome_probabilities(p).P_V;
        case Quantity::P_H: return outcome_probabilities(p).P_H;
        case Quantity::P_empty: return outcome_probabilities(p).P_empty;
        case Quantity::F_I: return fisher_information_sp(p).scaled;
        case Quantity::F_IV: return nominal_fisher_v(p).scaled;
        case Quantity::phi_F: return polarized_reflection(p).phi_F;
        case Quantity::sens_sp: return sensitivity_sp(p).value;
        case Quantity::sens_mp: return sensitivity_mp(p, c.environment(), c.probe()).value;
    }
    return std::nan("");
}

struct Axis {
    std::string name;
    double lo = 0.0;
    double hi = 0.0;
    std::size_t points = 2;
    bool log = false;
    std::string unit;  ///< empty for SI, or "kappa_i"

    /// Axis values in the axis' own unit.
    [[nodiscard]] std::vector<double> values() const {
        if (points < 2) throw ConfigError("axis '" + name + "' needs at least 2 points");
        if (!std::isfinite(lo) || !std::isfinite(hi)) throw ConfigError("axis '" + name + "' range not finite");
        if (!log) return linspace(lo, hi, points);
        if (!(lo > 0.0 && hi > 0.0)) throw ConfigError("log axis '" + name + "' needs positive bounds");
        auto v = linspace(std::log(lo), std::log(hi), points);
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] = i == 0 ? lo : (i + 1 == v.size() ? hi : std::exp(v[i]));
        }
        return v;
    }

    [[nodiscard]] std::string column() const { return unit.empty() ? name : name + "/" + unit; }
};

/// Parses NAME:LO:HI:N[:lin|log][:UNIT].
[[nodiscard]] inline Axis parse_axis(std::string_view text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const auto colon = text.find(':', start);
        parts.emplace_back(text.substr(start, colon == std::string_view::npos ? text.npos : colon - start));
        if (colon == std::string_view::npos) break;
        start = colon + 1;
    }
    if (parts.size() < 4 || parts.size() > 6) {
        throw ConfigError("axis must be NAME:LO:HI:N[:lin|log][:UNIT], got '" + std::string(text) + "'");
    }
    Axis a;
    a.name = parts[0];
    if (!key_kind(a.name)) throw ConfigError("unknown parameter '" + a.name + "'");
    try {
        std::size_t used = 0;
        a.lo = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("lo");
        a.hi = std::stod(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument("hi");
        const long n = std::stol(parts[3], &used);
        if (used != parts[3].size() || n < 2) throw std::invalid_argument("n");
        a.points = static_cast<std::size_t>(n);
    } catch (const std::exception&) {
        throw ConfigError("bad numeric field in axis '" + std::string(text) + "'");
    }
    for (std::size_t i = 4; i < parts.size(); ++i) {
        if (parts[i] == "lin") a.log = false;
        else if (parts[i] == "log") a.log = true;
        else if (parts[i] == "kappa_i") a.unit = "kappa_i";
        else throw ConfigError("unknown axis option '" + parts[i] + "'");
    }
    if (a.unit == "kappa_i" && (a.name == "kappa_i" || *key_kind(a.name) != ValueKind::rate || a.name == "omega_r")) {
        throw ConfigError("unit 'kappa_i' is not allowed for axis '" + a.name + "'");
    }
    return a;
}

struct SweepSpec {
    std::vector<Axis> axes;  ///< one or two
    ResolvedConfig base;
    Quantity quantity = Quantity::P_V;
    bool allow_nonfinite = true;
};

struct SweepResult {
    std::vector<std::string> axis_columns;
    std::string quantity_column;
    std::vector<std::vector<double>> axis_values;  ///< per row, in axis units
    std::vector<double> values;
    std::vector<bool> flags;

    [[nodiscard]] Table table() const {
        Table t;
        t.columns = axis_columns;
        t.columns.push_back(quantity_column);
        t.columns.push_back("flag");
        for (std::size_t i = 0; i < values.size(); ++i) {
            std::vector<double> row = axis_values[i];
            row.push_back(values[i]);
            row.push_back(flags[i] ? 1.0 : 0.0);
            t.add_row(row);
        }
        return t;
    }
};

/// Config for one cell: the base config with each axis value applied in order.
[[nodiscard]] inline ResolvedConfig cell_config(const SweepSpec& spec, const std::vector<double>& axis_values) {
    ResolvedConfig c = spec.base;
    const double kappa_i = spec.base.params.kappa_i;
    for (std::size_t k = 0; k < spec.axes.size(); ++k) {
        const double scale = spec.axes[k].unit == "kappa_i" ? kappa_i : 1.0;
        set_value(c, spec.axes[k].name, axis_values[k] * scale);
    }
    return c;
}

[[nodiscard]] inline SweepResult run_sweep(const SweepSpec& spec, unsigned jobs = default_jobs()) {
    if (spec.axes.empty() || spec.axes.size() > 2) throw ConfigError("sweep needs one or two axes");
    std::vector<std::vector<double>> grids;
    for (const auto& a : spec.axes) grids.push_back(a.values());

    SweepResult r;
    for (const auto& a : spec.axes) r.axis_columns.push_back(a.column());
    r.quantity_column = std::string(quantity_name(spec.quantity));
    const std::size_t n1 = grids[0].size();
    const std::size_t n2 = grids.size() == 2 ? grids[1].size() : 1;
    const std::size_t n = n1 * n2;
    r.axis_values.resize(n);
    r.values.assign(n, 0.0);
    std::vector<char> flags(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        r.axis_values[i] = {grids[0][i / n2]};
        if (grids.size() == 2) r.axis_values[i].push_back(grids[1][i % n2]);
    }
    parallel_for(n, jobs, [&](std::size_t i) {
        double v;
        try {
            v = evaluate_quantity(cell_config(spec, r.axis_values[i]), spec.quantity);
        } catch (const std::exception&) {
            v = std::nan("");
        }
        if (!std::isfinite(v)) {
            v = std::nan("");
            flags[i] = 1;
        }
        r.values[i] = v;
    });
    r.flags.assign(flags.begin(), flags.end());
    if (!spec.allow_nonfinite) {
        for (std::size_t i = 0; i < n; ++i) {
            if (flags[i]) throw std::runtime_error("sweep produced a non-finite value at row " + std::to_string(i));
        }
    }
    return r;
}

}  // namespace faraday

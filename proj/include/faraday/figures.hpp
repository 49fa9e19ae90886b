#pragma once

/*
 * figures.hpp: figure-reproduction jobs. Each job returns one or more CSV
 * files (name + content), each with its own manifest block. Rates are in units
 * of kappa_i (kappa_i = 1 Hz), so Fisher columns are in (mu_B g_e / kappa_i)^2
 * and sensitivity columns in sqrt(kappa_i) / (mu_B g_e).
 */

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "faraday/config.hpp"
#include "faraday/csv.hpp"
#include "faraday/single_photon.hpp"
#include "faraday/sweep.hpp"

namespace faraday {

struct OutputFile {
    std::string name;
    std::string content;
};

inline constexpr std::array<int, 5> kFigureIds{3, 4, 5, 6, 7};

namespace detail {

inline ResolvedConfig unit_config(const SystemParams& p) {
    ResolvedConfig c;
    c.params = p;
    return c;
}

inline OutputFile sweep_file(const std::string& name, const std::string& job, const SweepSpec& spec,
                             unsigned jobs) {
    auto m = make_manifest(job, &spec.base);
    for (const auto& a : spec.axes) {
        m.add("axis." + a.name, format_number(a.lo) + ".." + format_number(a.hi) + " x " +
                                    std::to_string(a.points) + (a.log ? " log" : " lin"));
    }
    m.add("quantity", std::string(quantity_name(spec.quantity)));
    return {name, to_csv(m, run_sweep(spec, jobs).table())};
}

inline Axis delta_axis(double lo, double hi, std::size_t n) { return Axis{"delta", lo, hi, n, false, ""}; }

// Outcome probabilities and their derivatives vs delta, baseline parameters.
inline std::vector<OutputFile> figure3(unsigned jobs) {
    const auto base = baseline_params(1.0);
    const auto grid = linspace(-2.0, 2.0, 4001);
    std::vector<std::array<double, 6>> rows(grid.size());
    parallel_for(grid.size(), jobs, [&](std::size_t i) {
        SystemParams q = base;
        q.delta = grid[i];
        const auto j = outcome_jet(q);
        rows[i] = {j.P.P_V, j.P.P_H, j.P.P_empty, j.dP[0], j.dP[1], j.dP[2]};
    });
    Table t;
    t.columns = {"delta/kappa_i", "P_V", "P_H", "P_empty", "dP_V", "dP_H", "dP_empty"};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        t.add_row({grid[i], rows[i][0], rows[i][1], rows[i][2], rows[i][3], rows[i][4], rows[i][5]});
    }
    const auto cfg = unit_config(base);
    return {{"fig3_probabilities.csv", to_csv(make_manifest("figure 3", &cfg), t)}};
}

inline std::vector<OutputFile> figure4(unsigned jobs) {
    SweepSpec s;
    s.base = unit_config(baseline_params(1.0));
    s.axes = {delta_axis(-1.5, 1.5, 4001)};
    s.quantity = Quantity::F_I;
    return {sweep_file("fig4_fisher.csv", "figure 4", s, jobs)};
}

// Scaled single-photon sensitivity vs kappa_ex for three couplings.
inline std::vector<OutputFile> figure5(unsigned jobs) {
    constexpr std::array<double, 3> couplings{0.02, 0.1, 0.2};
    const Axis axis{"kappa_ex", 0.5, 50.0, 2001, true, "kappa_i"};
    const auto xs = axis.values();
    std::vector<double> values(xs.size() * couplings.size());
    parallel_for(values.size(), jobs, [&](std::size_t i) {
        SystemParams q = baseline_params(1.0);
        q.kappa_ex = xs[i / couplings.size()];
        q.G = couplings[i % couplings.size()];
        double v;
        try {
            v = sensitivity_sp(q).value_scaled;
        } catch (const std::exception&) {
            v = std::nan("");
        }
        values[i] = std::isfinite(v) ? v : std::nan("");
    });
    Table t;
    t.columns = {"kappa_ex/kappa_i"};
    for (const char* g : {"0.02", "0.1", "0.2"}) t.columns.push_back(std::string("sens_G") + g);
    for (const char* g : {"0.02", "0.1", "0.2"}) t.columns.push_back(std::string("flag_G") + g);
    for (std::size_t r = 0; r < xs.size(); ++r) {
        std::vector<double> row{xs[r]};
        for (std::size_t k = 0; k < couplings.size(); ++k) row.push_back(values[r * couplings.size() + k]);
        for (std::size_t k = 0; k < couplings.size(); ++k) {
            row.push_back(std::isnan(values[r * couplings.size() + k]) ? 1.0 : 0.0);
        }
        t.add_row(row);
    }
    const auto cfg = unit_config(baseline_params(1.0));
    auto m = make_manifest("figure 5", &cfg);
    m.add("axis.kappa_ex", "0.5..50 kappa_i x 2001 log");
    m.add("quantity", "sens_sp scaled, adaptive Fisher grid per cell");
    return {{"fig5_sensitivity.csv", to_csv(m, t)}};
}

struct RidgePoint {
    double G = 0.0;
    double peak = 0.0;
    double peak_location = 0.0;
    double fwhm = 0.0;
};

inline std::vector<RidgePoint> fisher_ridge(const std::vector<double>& couplings, unsigned jobs) {
    std::vector<RidgePoint> out(couplings.size());
    parallel_for(couplings.size(), jobs, [&](std::size_t i) {
        SystemParams q = overcoupled_params(1.0);
        q.G = couplings[i];
        const auto c = adaptive_fisher_curve(q);
        out[i] = {couplings[i], c.peak_value, c.peak_location, c.fwhm};
    });
    return out;
}

// F_I over (G, delta) at kappa_ex = 10 kappa_i, plus the per-G ridge summary.
inline std::vector<OutputFile> figure6(unsigned jobs) {
    SweepSpec s;
    s.base = unit_config(overcoupled_params(1.0));
    s.axes = {Axis{"G", 0.02, 0.2, 91, false, "kappa_i"}, delta_axis(-0.01, 0.01, 2001)};
    s.quantity = Quantity::F_I;
    std::vector<OutputFile> files{sweep_file("fig6_fisher_map.csv", "figure 6", s, jobs)};

    const auto ridge = fisher_ridge(s.axes[0].values(), jobs);
    Table t;
    t.columns = {"G/kappa_i", "F_I_peak", "peak_delta/kappa_i", "fwhm/kappa_i", "hwhm/kappa_i"};
    for (const auto& r : ridge) t.add_row({r.G, r.peak, r.peak_location, r.fwhm, 0.5 * r.fwhm});
    auto m = make_manifest("figure 6 ridge", &s.base);
    m.add("quantity", "F_I peak and width per G, adaptive grid");
    files.push_back({"fig6_ridge.csv", to_csv(m, t)});
    return files;
}

inline std::vector<OutputFile> figure7(unsigned jobs) {
    SweepSpec s;
    s.base = unit_config(overcoupled_params(1.0));
    s.axes = {delta_axis(-0.01, 0.01, 4001)};
    s.quantity = Quantity::F_IV;
    return {sweep_file("fig7_fisher_v.csv", "figure 7", s, jobs)};
}

}  // namespace detail

[[nodiscard]] inline std::vector<OutputFile> figure_job(int id, unsigned jobs = default_jobs()) {
    switch (id) {
        case 3: return detail::figure3(jobs);
        case 4: return detail::figure4(jobs);
        case 5: return detail::figure5(jobs);
        case 6: return detail::figure6(jobs);
        case 7: return detail::figure7(jobs);
        default: throw std::invalid_argument("unknown figure " + std::to_string(id) + " (expected 3..7)");
    }
}

}  // namespace faraday

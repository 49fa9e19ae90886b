#pragma once

/*
 * acceptance.hpp: the acceptance suite. Each criterion returns
 * one or more ClaimRows (computed vs reference, tolerance, pass). Tolerances
 * are pinned here and nowhere else.
 */

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "faraday/csv.hpp"
#include "faraday/figures.hpp"
#include "faraday/langevin.hpp"
#include "faraday/multiphoton.hpp"
#include "faraday/single_photon.hpp"
#include "faraday/sweep.hpp"
#include "faraday/verification.hpp"

namespace faraday {

namespace tolerance {
inline constexpr int oracle_draws = 10000;
inline constexpr double oracle_relative = 1e-10;
inline constexpr int symmetry_draws = 10000;
inline constexpr double normalization_abs = 4.0 * 2.220446049250313e-16;
inline constexpr double symmetry_relative = 1e-12;
inline constexpr int derivative_draws = 10000;
inline constexpr double derivative_relative = 1e-8;
inline constexpr double derivative_floor = 1e-10;  // per kappa_i
inline constexpr double pv_max_abs = 0.005;
inline constexpr double pv_location_abs = 0.005;
inline constexpr double fisher_peak_rel = 0.10;
inline constexpr double fisher_location_abs = 0.02;
inline constexpr double fisher_fwhm_rel = 0.20;
inline constexpr double baseline_factor = 1.5;
inline constexpr double optimized_rel = 0.15;
inline constexpr double band_limit = 0.03;
inline constexpr double fisher_v_factor = 2.0;
inline constexpr double fisher_v_fwhm_rel = 0.50;
inline constexpr double c_th_coefficient = 10.0;  // |C_th - 2(P_V+P_H)| <= 10 rho^2
inline constexpr double chain_relative = 1e-12;
inline constexpr double rescaling_rel = 0.05;
inline constexpr double improvement_rel = 0.05;
}  // namespace tolerance

namespace detail {

inline std::string num(double v, const char* fmt = "%.6g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

inline ClaimRow claim(std::string id, std::string description, double computed, std::string reference,
                      std::string tol, bool pass) {
    return {std::move(id), std::move(description), num(computed), std::move(reference), std::move(tol), pass};
}

inline bool within_rel(double v, double target, double rel) { return std::abs(v - target) <= rel * std::abs(target); }
inline bool within_factor(double v, double target, double f) { return v >= target / f && v <= target * f; }

inline double complex_rel(cplx a, cplx b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

inline std::vector<ClaimRow> criterion1(unsigned) {
    verify::ParamSampler draw(1);
    double worst = 0.0;
    for (int i = 0; i < tolerance::oracle_draws; ++i) {
        const auto p = draw();
        for (Branch b : {Branch::plus, Branch::minus}) {
            worst = std::max(worst, complex_rel(reflection_coefficient(p, b).value, oracle_reflection(p, b)));
        }
    }
    return {claim("1", "closed-form r vs Langevin steady state, worst relative error over 1e4 draws", worst,
                  "agreement", "<= 1e-10", worst <= tolerance::oracle_relative)};
}

inline std::vector<ClaimRow> criterion2(unsigned) {
    const auto grid = linspace(-2.0, 2.0, 4001);
    SystemParams p = baseline_params(1.0);
    std::vector<double> pv(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        p.delta = grid[i];
        pv[i] = outcome_probabilities(p).P_V;
    }
    const std::size_t k = argmax_prefer_center(grid, pv);
    const double loc = std::abs(grid[k]);
    return {claim("2a", "max P_V at baseline", pv[k], "0.25", "+-0.005", std::abs(pv[k] - 0.25) <= tolerance::pv_max_abs),
            claim("2b", "|delta| of max P_V (kappa_i)", loc, "0.494", "+-0.005",
                  std::abs(loc - 0.494) <= tolerance::pv_location_abs)};
}

inline std::vector<ClaimRow> criterion3(unsigned) {
    verify::ParamSampler draw(3);
    double norm_worst = 0.0;
    double even_worst = 0.0;
    double odd_worst = 0.0;
    for (int i = 0; i < tolerance::symmetry_draws; ++i) {
        SystemParams p = draw();
        p.A = 0.0;
        const auto a = outcome_jet(p);
        norm_worst = std::max(norm_worst, std::abs(a.P.P_V + a.P.P_H + a.P.P_empty - 1.0));
        SystemParams q = p;
        q.delta = -p.delta;
        const auto b = outcome_jet(q);
        const std::array<double, 3> Pa{a.P.P_V, a.P.P_H, a.P.P_empty};
        const std::array<double, 3> Pb{b.P.P_V, b.P.P_H, b.P.P_empty};
        for (int c = 0; c < 3; ++c) {
            even_worst = std::max(even_worst, verify::relative_error(Pa[c], Pb[c]));
            const double s = std::max(std::abs(a.dP[c]), std::abs(b.dP[c]));
            if (s > 0.0) odd_worst = std::max(odd_worst, std::abs(a.dP[c] + b.dP[c]) / s);
        }
    }
    return {claim("3a", "|P_V + P_H + P_empty - 1|, worst over 1e4 draws", norm_worst, "0", "<= 4 ulp",
                  norm_worst <= tolerance::normalization_abs),
            claim("3b", "evenness of P at A = 0, worst relative", even_worst, "0", "<= 1e-12",
                  even_worst <= tolerance::symmetry_relative),
            claim("3c", "oddness of dP/d delta at A = 0, worst relative", odd_worst, "0", "<= 1e-12",
                  odd_worst <= tolerance::symmetry_relative)};
}

inline std::vector<ClaimRow> criterion4(unsigned) {
    const auto c = adaptive_fisher_curve(baseline_params(1.0));
    const double loc = std::abs(c.peak_location);
    return {claim("4a", "baseline F_I peak ((mu_B g_e/kappa_i)^2)", c.peak_value, "29", "+-10%",
                  within_rel(c.peak_value, 29.0, tolerance::fisher_peak_rel)),
            claim("4b", "|shift| of F_I peak (kappa_i)", loc, "0.07", "+-0.02",
                  std::abs(loc - 0.07) <= tolerance::fisher_location_abs),
            claim("4c", "F_I FWHM (kappa_i)", c.fwhm, "0.6", "+-20%", within_rel(c.fwhm, 0.6, tolerance::fisher_fwhm_rel))};
}

inline std::vector<ClaimRow> criterion5(unsigned) {
    const auto base = sensitivity_sp(baseline_params(1.0));
    // T/sqrt(Hz) per sqrt(kappa_i): value_scaled / (mu_B g_e)
    const double base_per_root_k = base.value_scaled / PhysicalConstants::mu_B_ge;
    const auto opt = sensitivity_sp(overcoupled_params(1.0));
    const auto opt_si = sensitivity_sp(overcoupled_params(28e6));
    return {claim("5a", "baseline sensitivity (T/sqrt(Hz) / sqrt(kappa_i))", base_per_root_k, "1.2e-11", "factor 1.5",
                  within_factor(base_per_root_k, 1.2e-11, tolerance::baseline_factor)),
            claim("5b", "optimized sensitivity (sqrt(kappa_i)/(mu_B g_e))", opt.value_scaled, "0.027", "+-15%",
                  within_rel(opt.value_scaled, 0.027, tolerance::optimized_rel)),
            claim("5c", "optimized sensitivity at kappa_i = 28 MHz (T/sqrt(Hz))", opt_si.value, "5.2e-9", "+-15%",
                  within_rel(opt_si.value, 5.2e-9, tolerance::optimized_rel))};
}

inline std::vector<ClaimRow> criterion6(unsigned jobs) {
    const Axis axis{"kappa_ex", 0.5, 50.0, 2001, true, "kappa_i"};
    std::vector<double> xs;
    for (double x : axis.values()) {
        if (x >= 8.0 && x <= 20.0) xs.push_back(x);
    }
    std::vector<double> v(xs.size());
    parallel_for(xs.size(), jobs, [&](std::size_t i) {
        SystemParams p = overcoupled_params(1.0);
        p.kappa_ex = xs[i];
        v[i] = sensitivity_sp(p).value_scaled;
    });
    double worst = 0.0;
    for (double s : v) worst = std::max(worst, std::isfinite(s) ? s : INFINITY);
    return {claim("6", "max G=0.1 sensitivity over kappa_ex in [8, 20] (" + std::to_string(xs.size()) + " points)",
                  worst, "< 0.03", "strict", worst < tolerance::band_limit)};
}

inline std::vector<ClaimRow> criterion7(unsigned) {
    const auto c = adaptive_fisher_curve(overcoupled_params(1.0), FisherKind::v_port);
    return {claim("7a", "peak F_I,V ((mu_B g_e/kappa_i)^2)", c.peak_value, "1e5", "factor 2",
                  within_factor(c.peak_value, 1e5, tolerance::fisher_v_factor)),
            claim("7b", "F_I,V FWHM (kappa_i)", c.fwhm, "4e-3", "+-50%", within_rel(c.fwhm, 4e-3, tolerance::fisher_v_fwhm_rel))};
}

inline ResolvedConfig nv_config(double kappa_i) {
    ResolvedConfig c;
    c.params = overcoupled_params(kappa_i);
    return c;
}

inline std::vector<ClaimRow> criterion8(unsigned) {
    std::vector<ClaimRow> rows;
    // (a) formula chain and the overcoupled limit of C_th
    {
        const auto c = nv_config(28e6);
        const auto r = sensitivity_mp_at_peak(c.params, c.environment(), c.probe());
        const double chain = verify::relative_error(r.value, r.value_pre_limit);
        SystemParams p = c.params;
        p.kappa_ex = 1e3 * p.kappa_i;  // rho = 1e-3
        const double rho = p.kappa_i / p.kappa_ex;
        const auto nb = noise_budget(p, c.environment());
        const auto P = outcome_probabilities(p);
        const double gap = std::abs(nb.C_th - 2.0 * (P.P_V + P.P_H));
        rows.push_back(claim("8a.chain", "pre-limit vs closed limit, relative difference", chain, "0", "<= 1e-12",
                             chain <= tolerance::chain_relative));
        rows.push_back(claim("8a.limit", "|C_th - 2(P_V+P_H)| / rho^2 at rho = 1e-3", gap / (rho * rho), "O(1)",
                             "<= 10", gap <= tolerance::c_th_coefficient * rho * rho));
    }
    // (b) tau_m drops out
    {
        auto c = nv_config(28e6);
        SystemParams p = c.params;
        p.delta = 1e-4 * p.kappa_i;
        const auto a = sensitivity_mp(p, c.environment(), c.probe());
        c.tau_m *= 1e3;
        const auto b = sensitivity_mp(p, c.environment(), c.probe());
        const double diff = std::max(verify::relative_error(a.value, b.value),
                                     verify::relative_error(a.value_pre_limit, b.value_pre_limit));
        rows.push_back(claim("8b", "relative change when tau_m x 1e3", diff, "0", "<= 1e-12",
                             a.value == b.value && diff <= tolerance::chain_relative));
    }
    // (c) Q = 100 vs Q = 1e5 presets
    {
        const auto q100 = nv_config(28e6);
        const auto q1e5 = nv_config(28e3);
        const double a = sensitivity_mp_at_peak(q100.params, q100.environment(), q100.probe()).value;
        const double b = sensitivity_mp_at_peak(q1e5.params, q1e5.environment(), q1e5.probe()).value;
        const double ratio = b / a;
        rows.push_back(claim("8c", "dB_MP(Q=1e5) / dB_MP(Q=100)", ratio, num(std::sqrt(1e-3)), "+-5%",
                             within_rel(ratio, std::sqrt(1e-3), tolerance::rescaling_rel)));
    }
    rows.push_back({"8d", "discrepancy report for the multiphoton endpoint emitted", "yes", "yes", "structural", true});
    return rows;
}

inline std::vector<ClaimRow> criterion9(unsigned) {
    const double f = mw_vs_optical_factor(70.0, 1.78e15);
    return {claim("9", "sqrt(hbar w_o / 2 k_B T) at 70 K, w_o = 1.78e15 rad/s", f, "10", "+-5%",
                  within_rel(f, 10.0, tolerance::improvement_rel))};
}

inline std::vector<ClaimRow> criterion10(unsigned) {
    verify::ParamSampler draw(10);
    double worst = 0.0;
    int compared = 0;
    for (int i = 0; i < tolerance::derivative_draws; ++i) {
        const auto p = draw();
        const auto analytic = outcome_jet(p).dP;
        const auto numeric = verify::richardson_derivatives(p, 1e-6 * p.kappa_i);
        for (int c = 0; c < 3; ++c) {
            if (std::abs(analytic[c]) <= tolerance::derivative_floor / p.kappa_i) continue;
            worst = std::max(worst, std::abs(analytic[c] - numeric[c]) / std::abs(analytic[c]));
            ++compared;
        }
    }
    return {claim("10", "analytic dP vs Richardson differences, worst relative (" + std::to_string(compared) +
                            " comparisons)",
                  worst, "agreement", "<= 1e-8", worst <= tolerance::derivative_relative)};
}

inline std::vector<ClaimRow> criterion11(unsigned jobs) {
    const unsigned other = jobs == 1 ? 3 : 1;
    bool same = true;
    std::size_t files = 0;
    for (int id : kFigureIds) {
        const auto a = figure_job(id, 1);
        const auto b = figure_job(id, std::max(other, jobs));
        same = same && a.size() == b.size();
        for (std::size_t k = 0; same && k < a.size(); ++k) {
            same = a[k].name == b[k].name && strip_timestamps(a[k].content) == strip_timestamps(b[k].content);
        }
        files += a.size();
    }
    return {{"11", "figure CSVs byte-identical for --jobs 1 vs " + std::to_string(std::max(other, jobs)) + " (" +
                       std::to_string(files) + " files, timestamps excluded)",
             same ? "identical" : "differ", "identical", "exact", same}};
}

}  // namespace detail

struct Criterion {
    int id;
    const char* title;
    std::function<std::vector<ClaimRow>(unsigned)> run;
};

[[nodiscard]] inline const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all{
        {1, "oracle equivalence", detail::criterion1},
        {2, "P_V maximum", detail::criterion2},
        {3, "normalization and symmetry", detail::criterion3},
        {4, "Fisher peak", detail::criterion4},
        {5, "single-photon sensitivity", detail::criterion5},
        {6, "optimum band", detail::criterion6},
        {7, "nominal V-port Fisher", detail::criterion7},
        {8, "multiphoton endpoint", detail::criterion8},
        {9, "improvement factor", detail::criterion9},
        {10, "derivative correctness", detail::criterion10},
        {11, "determinism", detail::criterion11},
    };
    return all;
}

/// Computed vs reference multiphoton endpoint figures.
[[nodiscard]] inline Table discrepancy_report() {
    const auto q100 = detail::nv_config(28e6);
    const auto q1e5 = detail::nv_config(28e3);
    const auto a = sensitivity_mp_at_peak(q100.params, q100.environment(), q100.probe());
    const auto b = sensitivity_mp_at_peak(q1e5.params, q1e5.environment(), q1e5.probe());
    Table t;
    t.columns = {"quantity", "computed", "reference", "computed/reference"};
    auto row = [&](const std::string& name, double computed, double reference) {
        t.rows.push_back({name, format_cell(computed), format_cell(reference), format_cell(computed / reference)});
    };
    row("dB_MP T/sqrt(Hz), kappa_i = 28 MHz", a.value, 1e-15);
    row("dB_MP / sqrt(kappa_i), kappa_i = 28 MHz", a.value / std::sqrt(q100.params.kappa_i), 1.92e-19);
    row("dB_MP T/sqrt(Hz), kappa_i = 28 kHz", b.value, 32.2e-18);
    row("dB_MP kT form T/sqrt(Hz), kappa_i = 28 MHz", a.value_kT, 1e-15);
    row("dB_MP overcoupled form T/sqrt(Hz), kappa_i = 28 MHz", a.value_overcoupled, 1e-15);
    return t;
}

struct PaperCheck {
    RunManifest manifest;
    Table claims;
    Table discrepancies;
};

/// Runs the selected criteria (all when `ids` is empty).
[[nodiscard]] inline PaperCheck check_paper(unsigned jobs = default_jobs(), const std::vector<int>& ids = {}) {
    PaperCheck out;
    out.manifest = make_manifest("check-paper", nullptr);
    for (const auto& c : criteria()) {
        if (!ids.empty() && std::find(ids.begin(), ids.end(), c.id) == ids.end()) continue;
        for (auto& row : c.run(jobs)) out.manifest.claims.push_back(std::move(row));
    }
    out.claims.columns = {"id", "description", "computed", "reference", "tolerance", "pass"};
    for (const auto& r : out.manifest.claims) {
        out.claims.rows.push_back({r.id, r.description, r.computed, r.reference, r.tolerance, r.pass ? "PASS" : "FAIL"});
    }
    if (ids.empty() || std::find(ids.begin(), ids.end(), 8) != ids.end()) out.discrepancies = discrepancy_report();
    return out;
}

}  // namespace faraday

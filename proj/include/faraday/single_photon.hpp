#pragma once

/*
 * single_photon.hpp: single-photon probe: outcome probabilities, Fisher
 * information over the three outcomes {V, H, lost}, and the Cramer-Rao limit.
 *
 *   P_V = |r_VH|^2,  P_H = |r_HH|^2,  P_lost = 1 - P_V - P_H
 *   F_I = (mu_B g_e)^2 sum_xi (dP_xi/d delta)^2 / P_xi
 *   dB sqrt(tau_total) >= sqrt(tau_m) / sqrt(F_I(peak)),  tau_m = 1/FWHM
 *
 * Where an outcome probability vanishes the Fisher term is replaced by its
 * limit: for P = |f|^2 with f(delta0) = 0 the term tends to 4|f'|^2, for the
 * loss channel it tends to 2 P''.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "faraday/constants.hpp"
#include "faraday/curve_analysis.hpp"
#include "faraday/reflection.hpp"
#include "faraday/system_params.hpp"

namespace faraday {

struct OutcomeDistribution {
    double P_V = 0.0;
    double P_H = 0.0;
    double P_empty = 0.0;
};

/// Threshold below which an outcome probability is treated as vanishing.
inline constexpr double kVanishingProbability = 1e-15;

[[nodiscard]] inline OutcomeDistribution outcome_probabilities(const PolarizedReflection& pr) {
    OutcomeDistribution d;
    d.P_V = std::norm(pr.r_VH);
    d.P_H = std::norm(pr.r_HH);
    d.P_empty = 1.0 - (d.P_V + d.P_H);
    return d;
}

[[nodiscard]] inline OutcomeDistribution outcome_probabilities(const SystemParams& p) {
    return outcome_probabilities(polarized_reflection(p));
}

/// The same probabilities written through r_bar, delta_r and the Faraday angle.
[[nodiscard]] inline OutcomeDistribution outcome_probabilities_polar(const PolarizedReflection& pr) {
    const double s2 = std::sin(pr.phi_F) * std::sin(pr.phi_F);
    const double c2 = std::cos(pr.phi_F) * std::cos(pr.phi_F);
    const double rb2 = pr.r_bar * pr.r_bar;
    const double dr2 = pr.delta_r * pr.delta_r;
    return {rb2 * s2 + dr2 * c2, rb2 * c2 + dr2 * s2, 1.0 - (rb2 + dr2)};
}

/// Probabilities, their delta-derivatives, and the vanishing-probability limits
/// of each Fisher term, evaluated together from one pair of reflection jets.
struct OutcomeJet {
    OutcomeDistribution P;
    std::array<double, 3> dP{};         ///< d/d delta of (P_V, P_H, P_empty), 1/Hz
    std::array<double, 3> term_limit{}; ///< limit of dP^2/P as P -> 0, 1/Hz^2
};

[[nodiscard]] inline OutcomeJet outcome_jet(const SystemParams& p) {
    const auto jp = reflection_jet(p, Branch::plus);
    const auto jm = reflection_jet(p, Branch::minus);
    const cplx r_HH = 0.5 * (jp.value + jm.value);
    const cplx r_VH = (jp.singular || jm.singular) ? 0.5 * (jp.value - jm.value) : cross_amplitude(p);
    const cplx d_HH = 0.5 * (jp.d1 + jm.d1);
    const cplx d_VH = 0.5 * (jp.d1 - jm.d1);

    OutcomeJet out;
    out.P.P_V = std::norm(r_VH);
    out.P.P_H = std::norm(r_HH);
    out.P.P_empty = 1.0 - (out.P.P_V + out.P.P_H);
    out.dP[0] = 2.0 * std::real(std::conj(r_VH) * d_VH);
    out.dP[1] = 2.0 * std::real(std::conj(r_HH) * d_HH);
    // P_V + P_H = (|r_+|^2 + |r_-|^2)/2; differentiating that directly avoids
    // cancellation between dP_V and dP_H
    out.dP[2] = -(std::real(std::conj(jp.value) * jp.d1) + std::real(std::conj(jm.value) * jm.d1));

    const double lost_d2 = -(std::norm(jp.d1) + std::real(std::conj(jp.value) * jp.d2) +
                             std::norm(jm.d1) + std::real(std::conj(jm.value) * jm.d2));
    out.term_limit = {4.0 * std::norm(d_VH), 4.0 * std::norm(d_HH), 2.0 * lost_d2};
    return out;
}

/// dP_xi/d delta for (V, H, empty), in 1/Hz.
[[nodiscard]] inline std::array<double, 3> probability_derivatives(const SystemParams& p) {
    return outcome_jet(p).dP;
}

/// Fisher information in SI units (1/T^2) and in units of (mu_B g_e / kappa_i)^2.
struct FisherInformation {
    double si = 0.0;
    double scaled = 0.0;
};

[[nodiscard]] inline double fisher_term(double P, double dP, double limit) {
    if (P < kVanishingProbability) return std::max(limit, 0.0);
    return dP * dP / P;
}

[[nodiscard]] inline FisherInformation make_fisher(double sum_per_hz2, double kappa_i) {
    constexpr double k2 = PhysicalConstants::mu_B_ge * PhysicalConstants::mu_B_ge;
    return {k2 * sum_per_hz2, sum_per_hz2 * kappa_i * kappa_i};
}

[[nodiscard]] inline FisherInformation fisher_information_sp(const SystemParams& p) {
    const auto j = outcome_jet(p);
    const std::array<double, 3> P{j.P.P_V, j.P.P_H, j.P.P_empty};
    double sum = 0.0;
    for (int k = 0; k < 3; ++k) sum += fisher_term(P[k], j.dP[k], j.term_limit[k]);
    return make_fisher(sum, p.kappa_i);
}

/// Fisher information carried by the V port alone.
[[nodiscard]] inline FisherInformation nominal_fisher_v(const SystemParams& p) {
    const auto j = outcome_jet(p);
    return make_fisher(fisher_term(j.P.P_V, j.dP[0], j.term_limit[0]), p.kappa_i);
}

enum class FisherKind { all_outcomes, v_port };

[[nodiscard]] inline FisherInformation fisher(const SystemParams& p, FisherKind kind) {
    return kind == FisherKind::all_outcomes ? fisher_information_sp(p) : nominal_fisher_v(p);
}

struct FisherCurve {
    std::vector<double> grid;  ///< signal shift delta, Hz
    std::vector<double> F;     ///< Fisher information, (mu_B g_e / kappa_i)^2 units
    double peak_value = 0.0;
    double peak_location = 0.0;  ///< Hz
    double fwhm = 0.0;           ///< Hz
    double left_half = 0.0;
    double right_half = 0.0;
};

/// Fisher information along a grid of delta values (A is held at its configured value).
[[nodiscard]] inline FisherCurve fisher_curve(const SystemParams& p, std::vector<double> delta_grid,
                                              FisherKind kind = FisherKind::all_outcomes) {
    require_grid(delta_grid, 16);
    FisherCurve c;
    c.grid = std::move(delta_grid);
    c.F.reserve(c.grid.size());
    SystemParams q = p;
    for (double d : c.grid) {
        q.delta = d;
        c.F.push_back(fisher(q, kind).scaled);
    }
    const auto peak = analyze_peak(c.grid, c.F);
    c.peak_value = peak.value;
    c.peak_location = peak.location;
    c.fwhm = peak.fwhm;
    c.left_half = peak.left_half;
    c.right_half = peak.right_half;
    return c;
}

[[nodiscard]] inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return v;
}

/// Delta range expected to contain the Fisher feature: centered on the spin
/// resonances, half-width set by the dressed spin linewidth.
[[nodiscard]] inline std::pair<double, double> feature_span(const SystemParams& p) {
    const double width = 0.5 * p.gamma + p.G * p.G / p.kappa();
    const double half = 8.0 * width + std::abs(p.Delta_q);
    return {-p.A - half, -p.A + half};
}

/// Fisher curve on an automatically chosen grid: a coarse pass over
/// feature_span (widened until the half-maximum region closes), then a pass of
/// the same density across the half-maximum region.
[[nodiscard]] inline FisherCurve adaptive_fisher_curve(const SystemParams& p,
                                                       FisherKind kind = FisherKind::all_outcomes,
                                                       std::size_t points = 2001) {
    auto [lo, hi] = feature_span(p);
    if (!(hi > lo)) throw NoFeatureError(NoFeatureError::Reason::flat, "no feature in range: zero-width span");
    FisherCurve coarse;
    for (int attempt = 0;; ++attempt) {
        try {
            coarse = fisher_curve(p, linspace(lo, hi, points), kind);
            break;
        } catch (const NoFeatureError& e) {
            if (attempt == 3 || e.reason() == NoFeatureError::Reason::flat) throw;
            const double mid = 0.5 * (lo + hi);
            const double half = 2.0 * (hi - lo);
            lo = mid - half;
            hi = mid + half;
        }
    }
    // Refine over every coarse sample above half maximum, so that a twin peak of
    // nearly equal height cannot win the fine pass with its flank cut off.
    double first = coarse.left_half;
    double last = coarse.right_half;
    for (std::size_t i = 0; i < coarse.grid.size(); ++i) {
        if (coarse.F[i] > 0.5 * coarse.peak_value) {
            first = std::min(first, coarse.grid[i]);
            last = std::max(last, coarse.grid[i]);
        }
    }
    const double margin = 0.5 * coarse.fwhm;
    return fisher_curve(p, linspace(first - margin, last + margin, points), kind);
}

struct SensitivityReport {
    double value = 0.0;         ///< T / sqrt(Hz)
    double value_scaled = 0.0;  ///< in units of sqrt(kappa_i) / (mu_B g_e)
    FisherInformation fisher_peak;
    double peak_location = 0.0;  ///< Hz
    double fwhm = 0.0;           ///< Hz
    double tau_m = 0.0;          ///< s
    std::string convention_notes;
    SystemParams parameter_echo;
};

[[nodiscard]] inline SensitivityReport sensitivity_from_curve(const SystemParams& p, const FisherCurve& c) {
    SensitivityReport r;
    r.peak_location = c.peak_location;
    r.fwhm = c.fwhm;
    r.tau_m = 1.0 / c.fwhm;
    const double scale = PhysicalConstants::mu_B_ge / p.kappa_i;
    r.fisher_peak = {c.peak_value * scale * scale, c.peak_value};
    r.value = std::sqrt(r.tau_m) / std::sqrt(r.fisher_peak.si);
    r.value_scaled = r.value * PhysicalConstants::mu_B_ge / std::sqrt(p.kappa_i);
    r.convention_notes = kConventionNotes;
    r.parameter_echo = p;
    return r;
}

[[nodiscard]] inline SensitivityReport sensitivity_sp(const SystemParams& p, std::vector<double> delta_grid) {
    return sensitivity_from_curve(p, fisher_curve(p, std::move(delta_grid)));
}

[[nodiscard]] inline SensitivityReport sensitivity_sp(const SystemParams& p) {
    return sensitivity_from_curve(p, adaptive_fisher_curve(p));
}

struct BiasOptimum {
    double A_opt = 0.0;  ///< Hz
    FisherInformation fisher;
};

/// Maximizes F_I over the bias A in [lo, hi] at delta = 0: coarse scan for a
/// bracket, then golden-section refinement.
[[nodiscard]] inline BiasOptimum optimal_bias(const SystemParams& p, double lo, double hi,
                                              std::size_t scan_points = 401) {
    if (!(hi > lo)) throw std::invalid_argument("optimal_bias: empty search range");
    auto F = [&](double a) {
        SystemParams q = p;
        q.A = a;
        q.delta = 0.0;
        return fisher_information_sp(q).scaled;
    };
    const auto xs = linspace(lo, hi, scan_points);
    std::vector<double> ys(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = F(xs[i]);
    const std::size_t best = argmax_prefer_center(xs, ys);
    const double lowest = *std::min_element(ys.begin(), ys.end());
    if (best == 0 || best + 1 == xs.size() || ys[best] - lowest <= 1e-12 * std::abs(ys[best])) {
        throw NoInteriorMaximumError("optimal_bias: no interior maximum in search range");
    }
    const double tol = 1e-12 * std::max(std::abs(hi - lo), p.kappa_i);
    const double a_opt = golden_section_max(F, xs[best - 1], xs[best + 1], tol);
    SystemParams q = p;
    q.A = a_opt;
    q.delta = 0.0;
    return {a_opt, fisher_information_sp(q)};
}

}  // namespace faraday

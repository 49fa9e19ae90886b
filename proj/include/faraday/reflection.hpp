#pragma once

/*
 * reflection.hpp: closed-form frequency-domain response of the spin-loaded
 * bimodal cavity.
 *
 * Each circular polarization sigma_+/- sees the reflection
 *
 *   r_pm = -1 + 2 kappa_ex / ( i Delta_r + kappa_ex + kappa_i
 *                              + G^2 / ( i [Delta_q +/- (A + delta)] + gamma/2 ) )
 *
 * and the linear-polarization (H, V) response follows from the change of
 * basis sigma_+ = (H - iV)/sqrt2, sigma_- = (H + iV)/sqrt2:
 *
 *   r_HH = (r_+ + r_-)/2,  r_VH = (r_+ - r_-)/2,
 *   S_r  = [[r_HH, i r_VH], [-i r_VH, r_HH]],
 *   S_t  = sqrt(kappa_i/kappa_ex) [[1 + r_HH, i r_VH], [-i r_VH, 1 + r_HH]].
 *
 * Derivatives are taken with respect to the signal shift delta.
 */

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "faraday/system_params.hpp"

namespace faraday {

using cplx = std::complex<double>;
using Vec2 = std::array<cplx, 2>;
using Mat2 = std::array<std::array<cplx, 2>, 2>;

inline constexpr cplx I{0.0, 1.0};

enum class Branch { plus, minus };

[[nodiscard]] constexpr double sign_of(Branch b) { return b == Branch::plus ? 1.0 : -1.0; }

/// Reflection amplitude of one circular branch, with d/d(delta) and d^2/d(delta)^2.
struct ReflectionJet {
    cplx value;
    cplx d1;
    cplx d2;
    bool singular = false;  ///< gamma = 0 on spin resonance; value is the analytic limit -1
};

struct Reflection {
    cplx value;
    bool singular = false;
};

namespace detail {

struct BranchTerms {
    cplx inner;  // i [Delta_q +/- (A+delta)] + gamma/2
    cplx den;    // i Delta_r + kappa + G^2 / inner
    bool singular;
};

inline BranchTerms branch_terms(const SystemParams& p, Branch b) {
    const double s = sign_of(b);
    const cplx inner{0.5 * p.gamma, p.Delta_q + s * p.shift()};
    const cplx cavity{p.kappa(), p.Delta_r};
    if (p.G == 0.0) return {inner, cavity, false};
    if (inner == cplx{0.0, 0.0}) return {inner, cavity, true};
    return {inner, cavity + p.G * p.G / inner, false};
}

}  // namespace detail

[[nodiscard]] inline ReflectionJet reflection_jet(const SystemParams& p, Branch b) {
    const double s = sign_of(b);
    const double G2 = p.G * p.G;
    const auto t = detail::branch_terms(p, b);
    if (t.singular) {
        // r ~ -1 + (2 kappa_ex / G^2) (inner - c inner^2 / G^2), inner = s*i*eps
        const cplx c{p.kappa(), p.Delta_r};
        return {cplx{-1.0, 0.0}, 2.0 * p.kappa_ex * s * I / G2,
                4.0 * p.kappa_ex * c / (G2 * G2), true};
    }
    const cplx inner_d1 = s * I;
    const cplx den_d1 = p.G == 0.0 ? cplx{} : -G2 * inner_d1 / (t.inner * t.inner);
    const cplx den_d2 = p.G == 0.0 ? cplx{} : -2.0 * G2 / (t.inner * t.inner * t.inner);
    const cplx den2 = t.den * t.den;
    const cplx r = -1.0 + 2.0 * p.kappa_ex / t.den;
    const cplx r1 = -2.0 * p.kappa_ex * den_d1 / den2;
    const cplx r2 = -2.0 * p.kappa_ex * (den_d2 / den2 - 2.0 * den_d1 * den_d1 / (den2 * t.den));
    return {r, r1, r2, false};
}

/// r_+ or r_- at the drive frequency. Singular regime returns -1 with the flag set.
[[nodiscard]] inline Reflection reflection_coefficient(const SystemParams& p, Branch b) {
    const auto t = detail::branch_terms(p, b);
    if (t.singular) return {cplx{-1.0, 0.0}, true};
    return {-1.0 + 2.0 * p.kappa_ex / t.den, false};
}

/// Cross-polarized amplitude (r_+ - r_-)/2 without subtractive cancellation:
/// kappa_ex G^2 * 2i(A+delta) / (inner_+ inner_- den_+ den_-).
[[nodiscard]] inline cplx cross_amplitude(const SystemParams& p) {
    const auto tp = detail::branch_terms(p, Branch::plus);
    const auto tm = detail::branch_terms(p, Branch::minus);
    if (tp.singular || tm.singular) {
        const cplx rp = reflection_coefficient(p, Branch::plus).value;
        const cplx rm = reflection_coefficient(p, Branch::minus).value;
        return 0.5 * (rp - rm);
    }
    if (p.G == 0.0) return {};
    return p.kappa_ex * p.G * p.G * (2.0 * I * p.shift()) / (tp.inner * tm.inner * tp.den * tm.den);
}

struct PolarizedReflection {
    cplx r_plus;
    cplx r_minus;
    double r_bar = 0.0;    ///< (|r_+| + |r_-|)/2
    double delta_r = 0.0;  ///< (|r_+| - |r_-|)/2
    double phi_F = 0.0;    ///< Faraday angle in (-pi/2, pi/2]
    cplx r_HH;
    cplx r_VH;
    bool singular = false;
};

/// Half the phase difference arg(r_+ conj(r_-)), principal value in (-pi/2, pi/2].
/// No unwrapping across calls.
[[nodiscard]] inline double faraday_angle(cplx r_plus, cplx r_minus) {
    return 0.5 * std::arg(r_plus * std::conj(r_minus));
}

[[nodiscard]] inline PolarizedReflection polarized_reflection(const SystemParams& p) {
    const auto rp = reflection_coefficient(p, Branch::plus);
    const auto rm = reflection_coefficient(p, Branch::minus);
    PolarizedReflection out;
    out.r_plus = rp.value;
    out.r_minus = rm.value;
    const double ap = std::abs(rp.value);
    const double am = std::abs(rm.value);
    out.r_bar = 0.5 * (ap + am);
    out.delta_r = 0.5 * (ap - am);
    out.phi_F = faraday_angle(rp.value, rm.value);
    out.r_HH = 0.5 * (rp.value + rm.value);
    out.r_VH = cross_amplitude(p);
    out.singular = rp.singular || rm.singular;
    return out;
}

struct ScatteringMatrices {
    Mat2 S_r;  ///< external input -> output, H/V basis
    Mat2 S_t;  ///< internal-loss noise -> output, H/V basis
};

[[nodiscard]] inline Mat2 reflection_matrix(const PolarizedReflection& pr) {
    return {{{pr.r_HH, I * pr.r_VH}, {-I * pr.r_VH, pr.r_HH}}};
}

[[nodiscard]] inline ScatteringMatrices scattering_matrices(const SystemParams& p) {
    if (!(p.kappa_ex > 0.0)) {
        throw std::domain_error("scattering_matrices: kappa_ex = 0, internal-noise transfer undefined");
    }
    const auto pr = polarized_reflection(p);
    const double pref = std::sqrt(p.kappa_i / p.kappa_ex);
    const cplx t_plus = 1.0 + pr.r_plus;
    const cplx t_minus = 1.0 + pr.r_minus;
    const cplx t_sum = 0.5 * (t_plus + t_minus);
    // (t_+ - t_-)/2 == (r_+ - r_-)/2; reuse the cancellation-free form.
    const cplx t_diff = pr.r_VH;
    ScatteringMatrices m;
    m.S_r = reflection_matrix(pr);
    m.S_t = {{{pref * t_sum, pref * I * t_diff}, {-pref * I * t_diff, pref * t_sum}}};
    return m;
}

enum class BasisDirection { hv_to_circular, circular_to_hv };

/// Change of polarization basis for a field given as coefficients (first, second).
/// H/V order is (H, V); circular order is (sigma_+, sigma_-).
[[nodiscard]] inline Vec2 basis_convert(const Vec2& field, BasisDirection dir) {
    constexpr double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    if (dir == BasisDirection::hv_to_circular) {
        const cplx h = field[0];
        const cplx v = field[1];
        return {inv_sqrt2 * (h + I * v), inv_sqrt2 * (h - I * v)};
    }
    const cplx sp = field[0];
    const cplx sm = field[1];
    return {inv_sqrt2 * (sp + sm), -I * inv_sqrt2 * (sp - sm)};
}

[[nodiscard]] inline Vec2 apply(const Mat2& m, const Vec2& v) {
    return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
}

}  // namespace faraday

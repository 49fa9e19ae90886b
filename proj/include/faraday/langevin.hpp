#pragma once

/*
 * langevin.hpp: steady-state solve of the cavity/spin Langevin equations,
 * used as an independent oracle for the closed-form reflection.
 *
 * In the frame rotating at the probe carrier, for one circular branch:
 *
 *   da/dt = (-i Delta_r - kappa) a - i G c + sqrt(2 kappa_ex) a_in
 *                                          + sqrt(2 kappa_i)  xi_in
 *   dc/dt = (-i [Delta_q +/- (A+delta)] - gamma/2) c - i G a
 *
 * and the field leaving through the external port is
 *
 *   a_out = -a_in + sqrt(2 kappa_ex) a.
 *
 * Fourier transforming at offset omega from the carrier gives the 2x2 system
 * (M + i omega) x = -b with x = (a, c). Spins receive no noise input.
 */

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "faraday/reflection.hpp"
#include "faraday/system_params.hpp"

namespace faraday {

struct LinearSystem2 {
    Mat2 drift;      ///< d/dt (a, c) = drift (a, c) + input_vec
    Vec2 input_vec;  ///< injection amplitudes for a unit drive
};

enum class DriveChannel { external, internal };

[[nodiscard]] inline LinearSystem2 langevin_system(const SystemParams& p, Branch b,
                                                   DriveChannel ch = DriveChannel::external) {
    const double s = sign_of(b);
    LinearSystem2 sys;
    sys.drift = {{{cplx{-p.kappa(), -p.Delta_r}, cplx{0.0, -p.G}},
                  {cplx{0.0, -p.G}, cplx{-0.5 * p.gamma, -(p.Delta_q + s * p.shift())}}}};
    const double rate = ch == DriveChannel::external ? p.kappa_ex : p.kappa_i;
    sys.input_vec = {cplx{std::sqrt(2.0 * rate), 0.0}, cplx{}};
    return sys;
}

/// Eigenvalues of a 2x2 complex matrix.
[[nodiscard]] inline std::array<cplx, 2> eigenvalues(const Mat2& m) {
    const cplx half_tr = 0.5 * (m[0][0] + m[1][1]);
    const cplx det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    const cplx disc = std::sqrt(half_tr * half_tr - det);
    return {half_tr + disc, half_tr - disc};
}

/// Solves m x = rhs by Gaussian elimination with partial pivoting.
/// Throws std::domain_error naming the undamped mode when m is singular.
[[nodiscard]] inline Vec2 solve2(Mat2 m, Vec2 rhs) {
    if (std::abs(m[1][0]) > std::abs(m[0][0])) {
        std::swap(m[0], m[1]);
        std::swap(rhs[0], rhs[1]);
    }
    if (m[0][0] == cplx{}) {
        // First column vanishes: the cavity amplitude is unconstrained.
        throw std::domain_error("steady state singular: undamped cavity mode");
    }
    const cplx f = m[1][0] / m[0][0];
    const cplx m11 = m[1][1] - f * m[0][1];
    const cplx r1 = rhs[1] - f * rhs[0];
    if (m11 == cplx{}) {
        throw std::domain_error("steady state singular: undamped spin mode");
    }
    const cplx x1 = r1 / m11;
    const cplx x0 = (rhs[0] - m[0][1] * x1) / m[0][0];
    return {x0, x1};
}

struct SteadyState {
    cplx a;  ///< cavity amplitude
    cplx c;  ///< collective spin amplitude
};

/// Steady-state response to a unit coherent drive at offset `drive_frequency`
/// (cyclic Hz) from the probe carrier.
[[nodiscard]] inline SteadyState steady_state_amplitudes(const SystemParams& p, Branch b,
                                                        double drive_frequency = 0.0,
                                                        DriveChannel ch = DriveChannel::external) {
    auto sys = langevin_system(p, b, ch);
    Mat2 m = sys.drift;
    m[0][0] += cplx{0.0, drive_frequency};
    m[1][1] += cplx{0.0, drive_frequency};
    const Vec2 x = solve2(m, {-sys.input_vec[0], -sys.input_vec[1]});
    return {x[0], x[1]};
}

/// Reflection from the linear solve: r = -1 + sqrt(2 kappa_ex) a for a unit drive.
[[nodiscard]] inline cplx oracle_reflection(const SystemParams& p, Branch b) {
    const auto ss = steady_state_amplitudes(p, b);
    return -1.0 + std::sqrt(2.0 * p.kappa_ex) * ss.a;
}

/// Coefficients of (xi_E^H, xi_I^H, xi_E^V, xi_I^V) in the V-polarized output:
/// (-i r_VH, -i r_VH sqrt(kappa_i/kappa_ex), r_HH, (1 + r_HH) sqrt(kappa_i/kappa_ex)).
[[nodiscard]] inline std::array<cplx, 4> noise_transfer_row(const SystemParams& p) {
    if (!(p.kappa_ex > 0.0)) {
        throw std::domain_error("noise_transfer_row: kappa_ex = 0, internal-noise transfer undefined");
    }
    const auto pr = polarized_reflection(p);
    const double pref = std::sqrt(p.kappa_i / p.kappa_ex);
    return {-I * pr.r_VH, -I * pr.r_VH * pref, pr.r_HH, (1.0 + pr.r_HH) * pref};
}

/// Same row assembled from the V rows of S_r (external sources) and S_t (internal sources).
[[nodiscard]] inline std::array<cplx, 4> noise_transfer_row_from_matrices(const ScatteringMatrices& m) {
    return {m.S_r[1][0], m.S_t[1][0], m.S_r[1][1], m.S_t[1][1]};
}

/// Same row obtained by driving each noise source through the Langevin solve,
/// one circular branch at a time, and projecting the output onto V.
[[nodiscard]] inline std::array<cplx, 4> oracle_noise_transfer_row(const SystemParams& p) {
    if (!(p.kappa_ex > 0.0)) {
        throw std::domain_error("oracle_noise_transfer_row: kappa_ex = 0");
    }
    const double root_ex = std::sqrt(2.0 * p.kappa_ex);
    std::array<cplx, 4> row{};
    const std::array<Vec2, 2> sources{Vec2{1.0, 0.0}, Vec2{0.0, 1.0}};  // H, V
    for (int pol = 0; pol < 2; ++pol) {
        const Vec2 circ = basis_convert(sources[pol], BasisDirection::hv_to_circular);
        for (int ch = 0; ch < 2; ++ch) {
            const auto channel = ch == 0 ? DriveChannel::external : DriveChannel::internal;
            Vec2 out_circ{};
            for (int k = 0; k < 2; ++k) {
                const Branch b = k == 0 ? Branch::plus : Branch::minus;
                const cplx a = steady_state_amplitudes(p, b, 0.0, channel).a;
                const cplx direct = channel == DriveChannel::external ? -1.0 : 0.0;
                out_circ[k] = (direct + root_ex * a) * circ[k];
            }
            const Vec2 out_hv = basis_convert(out_circ, BasisDirection::circular_to_hv);
            row[2 * pol + ch] = out_hv[1];
        }
    }
    return row;
}

}  // namespace faraday

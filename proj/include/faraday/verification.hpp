#pragma once

/*
 * verification.hpp: independent oracles used by the tests and by check-paper.
 *
 * The quad-precision path re-derives the outcome probabilities from the
 * reflection formula with its own real arithmetic (no std::complex, no shared
 * helpers), and differentiates them numerically with Richardson-extrapolated
 * central differences.
 */

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "faraday/system_params.hpp"

namespace faraday::verify {

using quad = __float128;

struct QuadProbabilities {
    quad P_V = 0;
    quad P_H = 0;
    quad P_empty = 0;
};

/// (P_V, P_H, P_empty) in quad precision at signal shift `delta`.
[[nodiscard]] inline QuadProbabilities quad_probabilities(const SystemParams& p, quad delta) {
    const quad ki = p.kappa_i, kex = p.kappa_ex, G = p.G, g = p.gamma;
    const quad Dr = p.Delta_r, Dq = p.Delta_q, s = quad(p.A) + delta;
    struct C {
        quad re, im;
    };
    auto r = [&](quad shift) -> C {
        const quad in_re = g / 2, in_im = Dq + shift;
        const quad n = in_re * in_re + in_im * in_im;
        const quad q_re = n == 0 ? quad(0) : G * G * in_re / n;
        const quad q_im = n == 0 ? quad(0) : -G * G * in_im / n;
        const quad d_re = kex + ki + q_re, d_im = Dr + q_im;
        const quad m = d_re * d_re + d_im * d_im;
        return {-1 + 2 * kex * d_re / m, -2 * kex * d_im / m};
    };
    const C a = r(s), b = r(-s);
    const quad vh_re = (a.re - b.re) / 2, vh_im = (a.im - b.im) / 2;
    const quad hh_re = (a.re + b.re) / 2, hh_im = (a.im + b.im) / 2;
    QuadProbabilities out;
    out.P_V = vh_re * vh_re + vh_im * vh_im;
    out.P_H = hh_re * hh_re + hh_im * hh_im;
    out.P_empty = 1 - out.P_V - out.P_H;
    return out;
}

/// Central differences at steps h, h/2, h/4, combined by Richardson extrapolation.
[[nodiscard]] inline std::array<double, 3> richardson_derivatives(const SystemParams& p, double h = 1e-6,
                                                                  int levels = 3) {
    std::vector<std::array<quad, 3>> table;
    for (int k = 0; k < levels; ++k) {
        const quad step = quad(h) / quad(1 << k);
        const auto up = quad_probabilities(p, quad(p.delta) + step);
        const auto dn = quad_probabilities(p, quad(p.delta) - step);
        table.push_back({(up.P_V - dn.P_V) / (2 * step), (up.P_H - dn.P_H) / (2 * step),
                         (up.P_empty - dn.P_empty) / (2 * step)});
    }
    for (int m = 1; m < levels; ++m) {
        const quad f = quad(1 << (2 * m));
        for (int k = 0; k + m < levels; ++k) {
            for (int c = 0; c < 3; ++c) table[k][c] = (f * table[k + 1][c] - table[k][c]) / (f - 1);
        }
    }
    return {static_cast<double>(table[0][0]), static_cast<double>(table[0][1]), static_cast<double>(table[0][2])};
}

/// Random system parameters with kappa_i = 1: kappa_ex in [0.1, 100], G in
/// [1e-3, 10] (or exactly 0 in one draw out of 50), gamma in [1e-4, 1],
/// detunings, bias and signal uniform in [-10, 10].
class ParamSampler {
public:
    explicit ParamSampler(std::uint64_t seed = 20240611) : rng_(seed) {}

    SystemParams operator()() {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::uniform_real_distribution<double> det(-10.0, 10.0);
        SystemParams p;
        p.kappa_i = 1.0;
        p.kappa_ex = std::pow(10.0, -1.0 + 3.0 * u(rng_));
        p.G = std::pow(10.0, -3.0 + 4.0 * u(rng_));
        p.gamma = std::pow(10.0, -4.0 + 4.0 * u(rng_));
        p.Delta_r = det(rng_);
        p.Delta_q = det(rng_);
        p.A = det(rng_);
        p.delta = det(rng_);
        if (u(rng_) < 0.02) p.G = 0.0;
        return p;
    }

private:
    std::mt19937_64 rng_;
};

[[nodiscard]] inline double relative_error(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace faraday::verify

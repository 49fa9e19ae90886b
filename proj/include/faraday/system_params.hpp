#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace faraday {

/// Rates and detunings of the spin-loaded bimodal cavity, all in cyclic Hz.
struct SystemParams {
    double kappa_i = 1.0;    ///< intrinsic cavity loss
    double kappa_ex = 1.0;   ///< external coupling
    double G = 1.0;          ///< collective spin-cavity coupling sqrt(N) g
    double gamma = 1e-3;     ///< spin decoherence per transition
    double Delta_r = 0.0;    ///< cavity detuning omega_r - omega_in
    double Delta_q = 0.0;    ///< spin detuning D - omega_in
    double A = 0.0;          ///< bias Zeeman shift
    double delta = 0.0;      ///< signal Zeeman shift
    double omega_r = 2.8e9;  ///< cavity resonance, only used for photon energy

    /// Total Zeeman shift A + delta seen by the spin transitions.
    [[nodiscard]] double shift() const { return A + delta; }
    [[nodiscard]] double kappa() const { return kappa_i + kappa_ex; }

    /// Copy with the given total shift, all carried by delta.
    [[nodiscard]] SystemParams with_shift(double s) const {
        SystemParams p = *this;
        p.A = 0.0;
        p.delta = s;
        return p;
    }

    /// Copy with every rate and detuning multiplied by `factor` (omega_r kept).
    [[nodiscard]] SystemParams scaled_rates(double factor) const {
        SystemParams p = *this;
        p.kappa_i *= factor;
        p.kappa_ex *= factor;
        p.G *= factor;
        p.gamma *= factor;
        p.Delta_r *= factor;
        p.Delta_q *= factor;
        p.A *= factor;
        p.delta *= factor;
        return p;
    }

    bool operator==(const SystemParams&) const = default;
};

/// Baseline of figures 3 and 4, in units of kappa_i: kappa_ex = G = kappa_i, gamma = 1e-3 kappa_i.
[[nodiscard]] inline SystemParams baseline_params(double kappa_i = 1.0) {
    SystemParams p;
    p.kappa_i = kappa_i;
    p.kappa_ex = kappa_i;
    p.G = kappa_i;
    p.gamma = 1e-3 * kappa_i;
    return p;
}

/// Overcoupled optimum in units of kappa_i: kappa_ex = 10 kappa_i, G = 0.1 kappa_i.
[[nodiscard]] inline SystemParams overcoupled_params(double kappa_i = 1.0) {
    SystemParams p = baseline_params(kappa_i);
    p.kappa_ex = 10.0 * kappa_i;
    p.G = 0.1 * kappa_i;
    return p;
}

inline void validate(const SystemParams& p) {
    auto finite = [](double v) { return std::isfinite(v); };
    if (!(finite(p.kappa_i) && finite(p.kappa_ex) && finite(p.G) && finite(p.gamma) &&
          finite(p.Delta_r) && finite(p.Delta_q) && finite(p.A) && finite(p.delta) &&
          finite(p.omega_r))) {
        throw std::invalid_argument("SystemParams: non-finite field");
    }
    if (!(p.kappa_i > 0.0)) throw std::invalid_argument("SystemParams: kappa_i must be > 0");
    if (p.kappa_ex < 0.0) throw std::invalid_argument("SystemParams: kappa_ex must be >= 0");
    if (p.gamma < 0.0) throw std::invalid_argument("SystemParams: gamma must be >= 0");
    if (p.G < 0.0) throw std::invalid_argument("SystemParams: G must be >= 0");
    if (!(p.omega_r > 0.0)) throw std::invalid_argument("SystemParams: omega_r must be > 0");
}

}  // namespace faraday

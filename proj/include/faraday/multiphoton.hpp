#pragma once

/*
 * multiphoton.hpp: thermal-noise-limited sensitivity for a weak coherent probe
 * read out on the V port.
 *
 * Thermal noise enters through the external and internal channels in both
 * polarizations, each with <n_E> = 2 kappa_ex n_th and <n_I> = 2 kappa_i n_th,
 * and reaches the V port through noise_transfer_row. With rho = kappa_i/kappa_ex:
 *
 *   n_xi = 2 kappa_ex n_th [ P_V (1 + rho^2) + P_H + (1 + P_H + 2 Re r_HH) rho^2 ]
 *   C_th = 2 P_V (1 + rho^2) + 2 P_H + 2 (1 + P_H + 2 Re r_HH) rho^2
 *   <M>  = 2 kappa_ex P_V n_in + n_xi
 *
 * and the limit
 *
 *   dB sqrt(tau) = sqrt(tau_m)/sqrt(F_IV) * sqrt(2 n_xi + 2 kappa_ex P_V) / sqrt(2 kappa_ex n_in)
 *                = sqrt(hbar w_r (C_th n_th + P_V)) / sqrt(F_IV P_in).
 *
 * Replacing n_th hbar w_r by k_B T gives the high-temperature form, and
 * C_th -> 2 (P_V + P_H) the overcoupled form; both are reported, neither is
 * substituted silently.
 */

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "faraday/constants.hpp"
#include "faraday/langevin.hpp"
#include "faraday/single_photon.hpp"
#include "faraday/system_params.hpp"

namespace faraday {

/// Bose-Einstein occupation of a mode with cyclic frequency `omega_r` at temperature T.
[[nodiscard]] inline double thermal_occupation(double T, double omega_r) {
    if (T < 0.0) throw std::invalid_argument("thermal_occupation: T must be >= 0");
    if (!(omega_r > 0.0)) throw std::invalid_argument("thermal_occupation: omega_r must be > 0");
    if (T == 0.0) return 0.0;
    const double x = photon_energy(omega_r) / (PhysicalConstants::k_B * T);
    return 1.0 / std::expm1(x);
}

struct ThermalEnvironment {
    double T = 0.0;     ///< K
    double n_th = 0.0;  ///< mean thermal occupation
};

[[nodiscard]] inline ThermalEnvironment make_environment(double T, double omega_r) {
    return {T, thermal_occupation(T, omega_r)};
}

struct ProbeSpec {
    double P_in = 0.0;   ///< W
    double tau_m = 0.0;  ///< s
    double n_in = 0.0;   ///< P_in tau_m / (hbar w_r)
};

[[nodiscard]] inline ProbeSpec make_probe(double P_in, double tau_m, double omega_r) {
    if (P_in < 0.0 || tau_m < 0.0) throw std::invalid_argument("make_probe: P_in and tau_m must be >= 0");
    return {P_in, tau_m, P_in * tau_m / photon_energy(omega_r)};
}

struct NoiseBudget {
    double n_xi = 0.0;  ///< thermal photon rate at the V port, Hz
    double C_th = 0.0;
    /// Contributions of (external H, internal H, external V, internal V).
    std::array<double, 4> components{};
};

/// Thermal noise reaching the V port. Assembled term by term from
/// |noise_transfer_row|^2 so that no 1/P_H factor appears.
[[nodiscard]] inline NoiseBudget noise_budget(const SystemParams& p, const ThermalEnvironment& env) {
    if (!(p.kappa_ex > 0.0)) throw std::domain_error("noise_budget: kappa_ex must be > 0");
    const auto pr = polarized_reflection(p);
    const double P_V = std::norm(pr.r_VH);
    const double P_H = std::norm(pr.r_HH);
    const double rho = p.kappa_i / p.kappa_ex;
    const double rho2 = rho * rho;
    const double v_internal = 1.0 + P_H + 2.0 * std::real(pr.r_HH);  // |1 + r_HH|^2
    const double unit = 2.0 * p.kappa_ex * env.n_th;

    NoiseBudget nb;
    nb.components = {unit * P_V, unit * P_V * rho2, unit * P_H, unit * v_internal * rho2};
    nb.n_xi = nb.components[0] + nb.components[1] + nb.components[2] + nb.components[3];
    nb.C_th = 2.0 * P_V * (1.0 + rho2) + 2.0 * P_H + 2.0 * v_internal * rho2;
    return nb;
}

struct MeasurementMoments {
    double mean = 0.0;
    double variance = 0.0;         ///< full second moment
    double variance_approx = 0.0;  ///< n_in >> n_xi >> 1 form
};

/// Moments of M = a_out^V+ a_out^V given the signal rate 2 kappa_ex P_V, the
/// probe photon number and the thermal rate n_xi.
[[nodiscard]] inline MeasurementMoments moments_from_rates(double signal_rate, double n_in, double n_xi) {
    MeasurementMoments m;
    m.mean = signal_rate * n_in + n_xi;
    // (2k P)^2 n_in (2 n_xi / (2k P) + 1), expanded so that P_V = 0 is regular.
    m.variance = 2.0 * signal_rate * n_in * n_xi + signal_rate * signal_rate * n_in + (n_xi * n_xi + n_xi);
    m.variance_approx = 2.0 * signal_rate * n_in * (n_xi + 0.5 * signal_rate);
    return m;
}

[[nodiscard]] inline MeasurementMoments measurement_moments(const SystemParams& p, const ThermalEnvironment& env,
                                                            const ProbeSpec& probe) {
    const double P_V = outcome_probabilities(p).P_V;
    return moments_from_rates(2.0 * p.kappa_ex * P_V, probe.n_in, noise_budget(p, env).n_xi);
}

class NoSignalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct MultiphotonReport {
    double value = 0.0;          ///< canonical limit with exact n_th, T/sqrt(Hz)
    double value_pre_limit = 0.0;///< same limit evaluated through n_xi, n_in and tau_m
    double value_kT = 0.0;       ///< n_th hbar w_r replaced by k_B T
    double value_overcoupled = 0.0;  ///< additionally C_th -> 2 (P_V + P_H)
    double value_scaled = 0.0;   ///< value in units of sqrt(kappa_i) / (mu_B g_e)
    FisherInformation fisher_v;
    NoiseBudget noise;
    OutcomeDistribution P;
    ThermalEnvironment env;
    ProbeSpec probe;
    std::string convention_notes;
    SystemParams parameter_echo;
};

[[nodiscard]] inline MultiphotonReport sensitivity_mp(const SystemParams& p, const ThermalEnvironment& env,
                                                      const ProbeSpec& probe) {
    if (!(probe.P_in > 0.0)) throw std::invalid_argument("sensitivity_mp: P_in must be > 0");
    MultiphotonReport r;
    r.fisher_v = nominal_fisher_v(p);
    if (!(r.fisher_v.si > 0.0)) throw NoSignalError("no signal transduction at this bias");
    r.P = outcome_probabilities(p);
    r.noise = noise_budget(p, env);
    r.env = env;
    r.probe = probe;
    const double E = photon_energy(p.omega_r);
    const double kT = PhysicalConstants::k_B * env.T;
    const double root_F = std::sqrt(r.fisher_v.si);

    r.value = std::sqrt(E * (r.noise.C_th * env.n_th + r.P.P_V) / probe.P_in) / root_F;
    r.value_kT = std::sqrt((r.noise.C_th * kT + r.P.P_V * E) / probe.P_in) / root_F;
    r.value_overcoupled = std::sqrt((2.0 * (r.P.P_V + r.P.P_H) * kT + r.P.P_V * E) / probe.P_in) / root_F;
    if (probe.n_in > 0.0) {
        const double signal_rate = 2.0 * p.kappa_ex * r.P.P_V;
        r.value_pre_limit = std::sqrt(probe.tau_m) / root_F *
                            std::sqrt(2.0 * r.noise.n_xi + signal_rate) /
                            std::sqrt(2.0 * p.kappa_ex * probe.n_in);
    }
    r.value_scaled = r.value * PhysicalConstants::mu_B_ge / std::sqrt(p.kappa_i);
    r.convention_notes = kConventionNotes;
    r.parameter_echo = p;
    return r;
}

/// sensitivity_mp at the peak of the V-port Fisher curve (bias moved to the peak).
[[nodiscard]] inline MultiphotonReport sensitivity_mp_at_peak(const SystemParams& p, const ThermalEnvironment& env,
                                                              const ProbeSpec& probe) {
    const auto curve = adaptive_fisher_curve(p, FisherKind::v_port);
    SystemParams q = p;
    q.delta = curve.peak_location;
    return sensitivity_mp(q, env, probe);
}

/// Sensitivity gain of a microwave readout over an optical one at the same
/// Fisher information and power: sqrt(hbar w_o / (2 k_B T)), w_o in rad/s.
[[nodiscard]] inline double mw_vs_optical_factor(double T, double omega_optical) {
    if (!(T > 0.0)) throw std::invalid_argument("mw_vs_optical_factor: T must be > 0");
    return std::sqrt(PhysicalConstants::hbar * omega_optical / (2.0 * PhysicalConstants::k_B * T));
}

}  // namespace faraday

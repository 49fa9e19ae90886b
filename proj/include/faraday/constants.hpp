#pragma once

/*
 * constants.hpp: physical constants and unit conventions.
 *
 * All rates (kappa_i, kappa_ex, G, gamma, detunings, Zeeman shifts) are cyclic
 * frequencies in Hz. The photon energy of a mode with cyclic frequency f is
 * E = hbar * 2*pi * f.
 */

#include <numbers>

namespace faraday {

struct PhysicalConstants {
    /// Zeeman coefficient mu_B * g_e in Hz/T (14 MHz/mT * 2).
    static constexpr double mu_B = 1.4e10;
    static constexpr double g_e = 2.0;
    static constexpr double mu_B_ge = mu_B * g_e;
    static constexpr double hbar = 1.054571817e-34;  ///< J s
    static constexpr double k_B = 1.380649e-23;      ///< J/K
};

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Photon energy hbar * 2*pi*f for a cyclic frequency f (Hz).
[[nodiscard]] constexpr double photon_energy(double cyclic_frequency) {
    return PhysicalConstants::hbar * two_pi * cyclic_frequency;
}

/// Text block echoed into every report and manifest.
inline constexpr const char* kConventionNotes =
    "rates are cyclic frequencies (Hz); tau_m = 1/FWHM of the Fisher curve (no 2*pi); "
    "photon energy E = hbar*2*pi*f; mu_B*g_e = 2.8e10 Hz/T; detector efficiency eta = 1";

}  // namespace faraday

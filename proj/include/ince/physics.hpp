#pragma once

// Laboratory inputs (photon energy, plasma energy or electron density,
// intensity) mapped to the dimensionless model, plus the momentum spectrum
// attached to each eigenvalue.
//
// Units: energies in eV, densities in cm^-3, intensity in W/cm^2, wave
// numbers in cm^-1. Electrodynamics is Gaussian. Dimensionless momenta are
// in units of k_p.

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "ince/eigensolver.hpp"
#include "ince/errors.hpp"

namespace ince {

namespace constants {

inline constexpr double speed_of_light = 2.99792458e10;     // cm/s
inline constexpr double hbar = 1.054571817e-27;             // erg s
inline constexpr double elementary_charge = 4.803204712570263e-10; // statC
inline constexpr double electron_mass = 9.1093837015e-28;   // g
inline constexpr double electron_volt = 1.602176634e-12;    // erg
inline constexpr double electron_rest_energy_ev = 510998.95;
inline constexpr double hbar_c_ev_cm = hbar * speed_of_light / electron_volt;

// Engineering prefactors for mu_0 = C sqrt(S) / E_ph and n_ph = C' S / E_ph.
inline constexpr double mu0_prefactor = 1.06e-9;
inline constexpr double photon_density_prefactor = 2.08e8;

} // namespace constants

/// m* / m = sqrt(1 + mu0^2).
inline double mass_shift(double mu0) {
    if (!(mu0 >= 0.0))
        throw invalid_argument("mass_shift needs mu0 >= 0");
    return std::sqrt(1.0 + mu0 * mu0);
}

/// hbar omega_p [eV] of an electron gas, omega_p^2 = 4 pi n_e e^2 / m.
inline double plasma_energy_from_density(double density_cm3) {
    using namespace constants;
    const double omega = std::sqrt(4.0 * std::numbers::pi * density_cm3 * elementary_charge * elementary_charge /
                                   electron_mass);
    return hbar * omega / electron_volt;
}

inline double density_from_plasma_energy(double plasma_energy_ev) {
    using namespace constants;
    const double omega = plasma_energy_ev * electron_volt / hbar;
    return electron_mass * omega * omega / (4.0 * std::numbers::pi * elementary_charge * elementary_charge);
}

/// Wave numbers and refractive index of the propagating wave.
struct WaveGeometry {
    double k0 = 0.0;  // omega_0 / c, cm^-1
    double kp = 0.0;  // k0 sqrt(1 - n_m^2) = omega_p / c, cm^-1
    double n_m = 0.0; // refractive index

    static WaveGeometry from_index(double k0, double n_m) {
        if (!(n_m >= 0.0 && n_m < 1.0))
            throw invalid_config("refractive index must lie in [0, 1)");
        return {k0, k0 * std::sqrt(1.0 - n_m * n_m), n_m};
    }

    double omega0() const noexcept { return k0 * constants::speed_of_light; }
};

struct PhysicalInputs {
    double photon_energy_ev = 0.0;
    std::optional<double> plasma_energy_ev;
    std::optional<double> electron_density_cm3;
    double intensity_wcm2 = 0.0;
};

// Values computed from fundamental constants, I_0 = c F_0^2 / 8 pi.
struct FirstPrinciplesValues {
    double field_amplitude = 0.0; // F_0, statV/cm
    double mu0 = 0.0;
    double photon_density_cm3 = 0.0;
    double a_work = 0.0;           // 4 e F_0 lambdabar_p / hbar omega_0
    double a_density_ratio = 0.0;  // 4 sqrt((2mc^2/hbar omega_0)(n_ph/n_e))
    double a_mu0 = 0.0;            // 2 mu0 (2 mc^2 / hbar omega_p)
    double a_vector_potential = 0.0; // 4 |e| A_0 / (hbar c k_p)
};

struct PhysicalConfig {
    double photon_energy_ev = 0.0;
    double plasma_energy_ev = 0.0;
    double electron_density_cm3 = 0.0;
    double intensity_wcm2 = 0.0;

    double n_m = 0.0;
    double k0 = 0.0; // cm^-1
    double kp = 0.0; // cm^-1
    double plasma_wavelength_nm = 0.0;
    double mu0 = 0.0;                 // engineering prefactor
    double photon_density_cm3 = 0.0;  // engineering prefactor
    double a = 0.0;                   // 2 mu0 (2 mc^2 / hbar omega_p)
    double mass_shift_ratio = 1.0;

    FirstPrinciplesValues first_principles;
    double a_discrepancy = 0.0; // |a - a_first_principles| / a_first_principles

    WaveGeometry geometry() const { return {k0, kp, n_m}; }

    /// K = 2 kappa / k_p = 2 mc^2 / hbar omega_p.
    double scaled_kappa() const { return 2.0 * constants::electron_rest_energy_ev / plasma_energy_ev; }
};

inline PhysicalConfig derive_config(const PhysicalInputs& in) {
    using namespace constants;
    if (in.plasma_energy_ev && in.electron_density_cm3)
        throw ambiguous_input("give either the plasma energy or the electron density, not both");
    if (!in.plasma_energy_ev && !in.electron_density_cm3)
        throw invalid_config("plasma energy or electron density is required");
    if (!(in.photon_energy_ev > 0.0) || !std::isfinite(in.photon_energy_ev))
        throw invalid_config("photon energy must be positive");
    if (!(in.intensity_wcm2 >= 0.0) || !std::isfinite(in.intensity_wcm2))
        throw invalid_config("intensity must be non-negative");

    PhysicalConfig cfg;
    cfg.photon_energy_ev = in.photon_energy_ev;
    cfg.intensity_wcm2 = in.intensity_wcm2;
    if (in.plasma_energy_ev) {
        if (!(*in.plasma_energy_ev > 0.0))
            throw invalid_config("plasma energy must be positive");
        cfg.plasma_energy_ev = *in.plasma_energy_ev;
        cfg.electron_density_cm3 = density_from_plasma_energy(cfg.plasma_energy_ev);
    } else {
        if (!(*in.electron_density_cm3 > 0.0))
            throw invalid_config("electron density must be positive");
        cfg.electron_density_cm3 = *in.electron_density_cm3;
        cfg.plasma_energy_ev = plasma_energy_from_density(cfg.electron_density_cm3);
    }
    if (!(cfg.photon_energy_ev > cfg.plasma_energy_ev))
        throw not_underdense("photon energy " + std::to_string(cfg.photon_energy_ev) +
                             " eV does not exceed the plasma energy " + std::to_string(cfg.plasma_energy_ev) +
                             " eV; the wave does not propagate");

    const double ratio = cfg.plasma_energy_ev / cfg.photon_energy_ev;
    cfg.n_m = std::sqrt(1.0 - ratio * ratio);
    cfg.k0 = cfg.photon_energy_ev / hbar_c_ev_cm;
    cfg.kp = cfg.plasma_energy_ev / hbar_c_ev_cm;
    cfg.plasma_wavelength_nm = 2.0 * std::numbers::pi / cfg.kp * 1e7;

    const double s = cfg.intensity_wcm2;
    cfg.mu0 = mu0_prefactor * std::sqrt(s) / cfg.photon_energy_ev;
    cfg.photon_density_cm3 = photon_density_prefactor * s / cfg.photon_energy_ev;
    cfg.a = 2.0 * cfg.mu0 * (2.0 * electron_rest_energy_ev / cfg.plasma_energy_ev);
    cfg.mass_shift_ratio = mass_shift(cfg.mu0);

    auto& fp = cfg.first_principles;
    const double intensity_cgs = s * 1e7;
    const double omega0 = cfg.photon_energy_ev * electron_volt / hbar;
    const double photon_erg = hbar * omega0;
    const double plasma_erg = cfg.plasma_energy_ev * electron_volt;
    const double rest_erg = electron_mass * speed_of_light * speed_of_light;
    const double k0 = omega0 / speed_of_light;
    const double kp = plasma_erg / (hbar * speed_of_light);
    fp.field_amplitude = std::sqrt(8.0 * std::numbers::pi * intensity_cgs / speed_of_light);
    fp.mu0 = elementary_charge * fp.field_amplitude / (electron_mass * speed_of_light * omega0);
    fp.photon_density_cm3 = intensity_cgs / (speed_of_light * photon_erg);
    fp.a_work = 4.0 * elementary_charge * fp.field_amplitude / kp / photon_erg;
    fp.a_density_ratio = 4.0 * std::sqrt((2.0 * rest_erg / photon_erg) * (fp.photon_density_cm3 / cfg.electron_density_cm3));
    fp.a_mu0 = 2.0 * fp.mu0 * (2.0 * rest_erg / plasma_erg);
    const double vector_potential = fp.field_amplitude / k0;
    fp.a_vector_potential = 4.0 * (elementary_charge / (hbar * speed_of_light)) * vector_potential / kp;
    cfg.a_discrepancy = fp.a_mu0 > 0.0 ? std::abs(cfg.a - fp.a_mu0) / fp.a_mu0 : 0.0;
    return cfg;
}

/// Momentum parameters in units of k_p.
struct MomentumParameters {
    double p_hat = 0.0;
    double p_x = 0.0;
    double p_z = 0.0;
    double kappa = 0.0;
};

/// eta = 4 (p_hat^2 + p_perp^2 + kappa^2) + a^2/4, momenta in units of k_p.
inline double eta_from_momenta(double a, const MomentumParameters& p) {
    return 4.0 * (p.p_hat * p.p_hat + p.p_x * p.p_x + p.p_z * p.p_z + p.kappa * p.kappa) + 0.25 * a * a;
}

struct WhittakerHillParameters {
    double theta0 = 0.0;
    double theta1 = 0.0;
    double theta2 = 0.0;
    double g1 = 0.0;
};

/// Coefficients of
///   Psi'' + (theta0 + 2 theta1 cos 2z + 2 theta2 cos 4z + 2 i G1 sin 2z) Psi = 0
/// for an electron (eps < 0) and the positive-energy branch.
inline WhittakerHillParameters whittaker_hill_params(double a, const MomentumParameters& p) {
    WhittakerHillParameters w;
    w.theta2 = a * a / 16.0; // (|eps| A_0 / k_p)^2
    // 4/(-k^2) [-(k.p)^2/k^2 + p^2 - kappa^2 - eps^2 A_0^2 / 2] with (k.p)^2/k^2 - p^2 = p_hat^2 + p_perp^2
    const double transverse = p.p_hat * p.p_hat + p.p_x * p.p_x + p.p_z * p.p_z;
    w.theta0 = 4.0 * (transverse + p.kappa * p.kappa + 0.5 * w.theta2);
    // 2 theta1 + 4 sqrt(theta2) = -q a with q + 1 = 2 p_x / k_p
    w.theta1 = -0.5 * (2.0 * p.p_x) * a;
    w.g1 = 2.0 * std::sqrt(w.theta2); // -(eps/|eps|) 2 sqrt(theta2)
    return w;
}

inline WhittakerHillParameters whittaker_hill_params(const PhysicalConfig& cfg, const MomentumParameters& p) {
    return whittaker_hill_params(cfg.a, p);
}

inline double gap_threshold(double a) { return 0.25 * a * a; }

struct MomentumRecord {
    int k = 0;
    int sign = 1; // branch of the +/- roots
    double eta = 0.0;
    double radicand = 0.0;      // eta - (q+1)^2 - P_z^2 - K^2 - (a/2)^2
    double p_hat = 0.0;         // signed magnitude, units of k_p
    bool evanescent = false;    // radicand < 0: p_hat is imaginary
    std::optional<double> p_xi_scaled; // 2 p_xi / k_p^2, absent for gap states
    bool gap = false;           // eta < a^2 / 4

    std::complex<double> p_hat_complex() const {
        return evanescent ? std::complex<double>(0.0, p_hat) : std::complex<double>(p_hat, 0.0);
    }
};

/// Two records (sign +1, then -1) per eigenvalue, in descending eigenvalue order.
inline std::vector<MomentumRecord> momentum_spectrum(const SpectralSolution& sol, double scaled_pz, double scaled_kappa) {
    if (!(scaled_kappa >= 0.0))
        throw invalid_argument("K = 2 kappa / k_p must be >= 0");
    const double q1 = sol.q() + 1.0;
    const double threshold = gap_threshold(sol.a);
    std::vector<MomentumRecord> out;
    out.reserve(2 * sol.dimension());
    for (std::size_t j = 0; j < sol.dimension(); ++j) {
        const double eta = sol.eigenvalues[j];
        const double radicand =
            eta - q1 * q1 - scaled_pz * scaled_pz - scaled_kappa * scaled_kappa - 0.25 * sol.a * sol.a;
        for (int sign : {+1, -1}) {
            MomentumRecord rec;
            rec.k = static_cast<int>(j) + 1;
            rec.sign = sign;
            rec.eta = eta;
            rec.radicand = radicand;
            rec.evanescent = radicand < 0.0;
            rec.p_hat = sign * 0.5 * std::sqrt(std::abs(radicand));
            rec.gap = eta < threshold;
            if (!rec.gap)
                rec.p_xi_scaled = sign * std::sqrt(eta - threshold);
            out.push_back(rec);
        }
    }
    return out;
}

} // namespace ince

#pragma once

#include <complex>

#include "nonrecip/constants.hpp"

namespace nonrecip {

/// Static system constants. All rates and frequencies are angular (rad/s);
/// kappa is an amplitude decay rate, gamma_* are energy decay rates.
struct BareParams {
    double g0_11 = 0.0;  // bare optomechanical couplings, cavity <-> mode j
    double g0_12 = 0.0;
    double g0_21 = 0.0;  // bare electromechanical couplings, rf <-> mode j
    double g0_22 = 0.0;
    double kappa = 0.0;     // optical amplitude decay
    double gamma_lc = 0.0;  // rf energy decay
    double gamma_m1 = 0.0;  // mechanical energy decays
    double gamma_m2 = 0.0;
    double omega_1 = 0.0;  // mechanical resonances
    double omega_2 = 0.0;
    double omega_lc0 = 0.0;  // bare rf resonance
    double delta_l = 0.0;    // bare cavity detuning
    // Thermal occupations: parsed and stored, but inert (no noise spectra here).
    double nbar_1 = 0.0;
    double nbar_2 = 0.0;
    double ntilde_2 = 0.0;

    double g0(int ell, int j) const;
    double gamma_m(int j) const { return j == 1 ? gamma_m1 : gamma_m2; }
    double omega_m(int j) const { return j == 1 ? omega_1 : omega_2; }

    /// Throws InvalidParameterError when a decay or resonance is not positive
    /// or a thermal occupation is negative.
    void validate() const;
};

/// The three drive tones: two optical (magnitudes E1, E2 at +/- omega_plus)
/// and one rf tone at omega_x.
struct DriveConfig {
    double e1 = 0.0;
    double e2 = 0.0;
    double phi_11 = 0.0;
    double phi_12 = 0.0;
    double v_mag = 0.0;  // |V'|
    double phi_x = 0.0;
    double omega_plus = 0.0;  // half tone splitting
    double omega_x = 0.0;     // rf drive frequency

    Complex drive1() const { return std::polar(e1, phi_11); }
    Complex drive2() const { return std::polar(e2, phi_12); }
    Complex rf_drive() const { return std::polar(v_mag, phi_x); }

    void validate() const;
};

/// Interaction-picture frame: shifted detunings and the nonreciprocity
/// detuning delta. omega_tilde_j = omega_j - (-1)^j delta.
struct FrameConfig {
    double detuning = 0.0;  // shifted cavity detuning
    double omega_lc = 0.0;  // shifted rf frequency
    double delta = 0.0;     // nonreciprocity detuning
    double omega_tilde_1 = 0.0;
    double omega_tilde_2 = 0.0;

    double omega_plus() const { return omega_lc - detuning; }
    double omega_x() const { return omega_tilde_2 - omega_tilde_1; }
};

/// E = sqrt(2 kappa_in P / (hbar omega_L)).
double drive_rate_from_power(double power_watt, double kappa_in, double omega_l);

/// V' = (q_zpf V_AC / (2 hbar sqrt(2))) e^{i phi_x}.
Complex rf_drive_rate(double v_ac, double q_zpf, double phi_x);

}  // namespace nonrecip

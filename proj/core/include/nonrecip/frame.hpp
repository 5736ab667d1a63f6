#pragma once

#include "nonrecip/params.hpp"

namespace nonrecip {

/// Denominator convention for the fixed susceptibilities.
///
/// paper_literal: chi_1 = 1/(kappa + i delta_l) and friends, no tone shifts.
/// drive_shifted: each harmonic responds with its own shifted denominator,
/// e.g. 1/(kappa + i(delta_l + omega_plus)) for the +omega_plus optical line.
/// The first reproduces the closed coupling formulas; the second is what the
/// time-domain equations actually do, so the oracle compares against it.
enum class ChiMode { paper_literal, drive_shifted };

struct Susceptibilities {
    ChiMode mode = ChiMode::paper_literal;
    double kappa = 0.0;
    double delta_l = 0.0;
    double gamma_lc = 0.0;
    double omega_lc0 = 0.0;
    double gamma_m1 = 0.0;
    double gamma_m2 = 0.0;
    double omega_1 = 0.0;
    double omega_2 = 0.0;
    double omega_plus = 0.0;
    double omega_x = 0.0;

    // Mode-aware response at a given harmonic frequency (rad/s).
    Complex chi_a1(double freq) const {
        return 1.0 / Complex(kappa, delta_l + (mode == ChiMode::drive_shifted ? freq : 0.0));
    }
    Complex chi_a2(double freq) const {
        return 1.0 / Complex(0.5 * gamma_lc, omega_lc0 + (mode == ChiMode::drive_shifted ? freq : 0.0));
    }
    Complex chi_b(int j, double freq) const {
        const double gm = j == 1 ? gamma_m1 : gamma_m2;
        const double wm = j == 1 ? omega_1 : omega_2;
        return 1.0 / Complex(0.5 * gm, wm + (mode == ChiMode::drive_shifted ? freq : 0.0));
    }

    // The four named entries. chi_1 belongs to the +omega_plus optical line
    // and chi_lc to the +omega_x rf line; the mechanical chi' are dc responses
    // and coincide in both modes.
    Complex chi_1() const { return chi_a1(omega_plus); }
    Complex chi_lc() const { return chi_a2(omega_x); }
    Complex chi_m1_prime() const { return chi_b(1, 0.0); }
    Complex chi_m2_prime() const { return chi_b(2, 0.0); }
    Complex chi_m_prime(int j) const { return chi_b(j, 0.0); }
};

Susceptibilities susceptibilities(const BareParams& bare, const FrameConfig& frame,
                                  ChiMode mode);

/// Frequencies fixed by the resonance conditions for given targets.
struct ResonanceFrequencies {
    double omega_plus = 0.0;
    double detuning = 0.0;  // shifted cavity detuning
    double omega_1 = 0.0;
    double omega_2 = 0.0;
};

/// omega_plus = omega_x/2, detuning = omega_lc - omega_plus,
/// omega_1 = omega_lc - delta, omega_2 = omega_lc + omega_x + delta.
ResonanceFrequencies apply_resonance_conditions(double omega_lc, double omega_x,
                                                double delta);

struct FrameResolution {
    double delta_l = 0.0;    // bare cavity detuning solving the shift equation
    double omega_lc0 = 0.0;  // bare rf resonance solving the shift equation
    FrameConfig frame;
    int iterations = 0;
    double residual_detuning = 0.0;
    double residual_omega_lc = 0.0;
    double shift_detuning = 0.0;  // delta_l - target detuning
    double shift_omega_lc = 0.0;  // omega_lc0 - target omega_lc
    bool strained = false;  // a shift exceeded 1% of its target magnitude
};

/// Solves the dc-shift fixed point
///   detuning = delta_l + 2 sum_j g0_1j Re{beta_j_dc}
///   omega_lc = omega_lc0 - 4 sum_j g0_2j Re{beta_j_dc}
/// by damped iteration (x <- x - 0.8 residual, cap 50, tol 1e-6 rad/s).
/// bare must carry omega_1, omega_2 already fixed by the resonance
/// conditions; its delta_l / omega_lc0 are used as the starting guess when
/// nonzero, otherwise the targets seed the iteration.
FrameResolution resolve_frame(const BareParams& bare, const DriveConfig& drives,
                              double target_detuning, double target_omega_lc,
                              ChiMode mode = ChiMode::paper_literal);

}  // namespace nonrecip

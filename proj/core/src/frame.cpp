#include "nonrecip/frame.hpp"

#include <array>
#include <cmath>
#include <string>

#include "nonrecip/errors.hpp"

namespace nonrecip {

Susceptibilities susceptibilities(const BareParams& bare, const FrameConfig& frame,
                                  ChiMode mode) {
    Susceptibilities chi;
    chi.mode = mode;
    chi.kappa = bare.kappa;
    chi.delta_l = bare.delta_l;
    chi.gamma_lc = bare.gamma_lc;
    chi.omega_lc0 = bare.omega_lc0;
    chi.gamma_m1 = bare.gamma_m1;
    chi.gamma_m2 = bare.gamma_m2;
    chi.omega_1 = bare.omega_1;
    chi.omega_2 = bare.omega_2;
    chi.omega_plus = frame.omega_plus();
    chi.omega_x = frame.omega_x();
    return chi;
}

ResonanceFrequencies apply_resonance_conditions(double omega_lc, double omega_x,
                                                double delta) {
    if (!(omega_lc > 0.0)) {
        throw InvalidParameterError("omega_lc must be positive");
    }
    if (!(omega_x > 0.0)) {
        throw InvalidParameterError("omega_x must be positive");
    }
    ResonanceFrequencies out;
    out.omega_plus = 0.5 * omega_x;
    out.detuning = omega_lc - out.omega_plus;
    out.omega_1 = omega_lc - delta;
    out.omega_2 = omega_lc + omega_x + delta;
    return out;
}

namespace {

// dc mechanical amplitudes at zeroth drive order: beta_j_dc built from the
// three zeroth-order field amplitudes.
std::array<double, 2> dc_displacements(const BareParams& bare, const DriveConfig& drives,
                                       const Susceptibilities& chi) {
    const Complex a1p = -kImag * chi.chi_a1(drives.omega_plus) * drives.drive1();
    const Complex a1m = -kImag * chi.chi_a1(-drives.omega_plus) * drives.drive2();
    const Complex a2x = kImag * chi.chi_a2(drives.omega_x) * drives.rf_drive();
    const double opt = std::norm(a1p) + std::norm(a1m);
    const double rf = std::norm(a2x);
    std::array<double, 2> re_bdc{};
    for (int j = 1; j <= 2; ++j) {
        const Complex bdc =
            -kImag * chi.chi_b(j, 0.0) * (bare.g0(1, j) * opt - 2.0 * bare.g0(2, j) * rf);
        re_bdc[j - 1] = bdc.real();
    }
    return re_bdc;
}

}  // namespace

FrameResolution resolve_frame(const BareParams& bare, const DriveConfig& drives,
                              double target_detuning, double target_omega_lc,
                              ChiMode mode) {
    drives.validate();

    constexpr int kMaxIterations = 50;
    constexpr double kTolerance = 1e-6;  // rad/s
    constexpr double kDamping = 0.8;

    FrameResolution out;
    out.delta_l = bare.delta_l != 0.0 ? bare.delta_l : target_detuning;
    out.omega_lc0 = bare.omega_lc0 > 0.0 ? bare.omega_lc0 : target_omega_lc;

    BareParams work = bare;
    work.delta_l = out.delta_l;
    work.omega_lc0 = out.omega_lc0;
    work.validate();
    FrameConfig frame;
    frame.detuning = target_detuning;
    frame.omega_lc = target_omega_lc;
    frame.delta = target_omega_lc - bare.omega_1;
    frame.omega_tilde_1 = bare.omega_1 + frame.delta;
    frame.omega_tilde_2 = bare.omega_2 - frame.delta;

    double res_d = 0.0;
    double res_w = 0.0;
    for (int it = 1; it <= kMaxIterations; ++it) {
        work.delta_l = out.delta_l;
        work.omega_lc0 = out.omega_lc0;
        const auto chi = susceptibilities(work, frame, mode);
        const auto re_bdc = dc_displacements(work, drives, chi);
        const double opt_shift =
            2.0 * (work.g0_11 * re_bdc[0] + work.g0_12 * re_bdc[1]);
        const double rf_shift = 4.0 * (work.g0_21 * re_bdc[0] + work.g0_22 * re_bdc[1]);
        res_d = (out.delta_l + opt_shift) - target_detuning;
        res_w = (out.omega_lc0 - rf_shift) - target_omega_lc;
        out.iterations = it;
        if (std::abs(res_d) < kTolerance && std::abs(res_w) < kTolerance) {
            out.residual_detuning = res_d;
            out.residual_omega_lc = res_w;
            out.frame = frame;
            out.shift_detuning = out.delta_l - target_detuning;
            out.shift_omega_lc = out.omega_lc0 - target_omega_lc;
            const double d_scale = std::max(std::abs(target_detuning), 1.0);
            const double w_scale = std::max(std::abs(target_omega_lc), 1.0);
            out.strained = std::abs(out.shift_detuning) > 0.01 * d_scale ||
                           std::abs(out.shift_omega_lc) > 0.01 * w_scale;
            return out;
        }
        out.delta_l -= kDamping * res_d;
        out.omega_lc0 -= kDamping * res_w;
    }
    throw FrameResolutionError(
        "frame resolution did not converge after 50 iterations; last residual " +
            std::to_string(std::max(std::abs(res_d), std::abs(res_w))) + " rad/s",
        std::max(std::abs(res_d), std::abs(res_w)));
}

}  // namespace nonrecip

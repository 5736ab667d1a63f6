#pragma once

#include <array>
#include <vector>

#include "nonrecip/couplings.hpp"
#include "nonrecip/frame.hpp"
#include "nonrecip/params.hpp"

namespace nonrecip {

/// Sign of the input-field term in a_out = sqrt(2 kappa) da + s * a_in.
/// plus_ain is the literal printed relation (a decoupled port then reflects
/// with |S_jj(0)| = 3); minus_ain is the passive convention (|S_jj(0)| = 1).
/// Off-diagonal S and all T entries are identical under both.
enum class IoSign { plus_ain, minus_ain };

/// S(omega), T(omega) and the interference diagnostics at one frequency.
/// S rows/columns are (optical, rf) ports; T columns are the two mechanical
/// noise inputs.
struct SMatrixPoint {
    std::array<std::array<Complex, 2>, 2> s{};
    std::array<std::array<Complex, 2>, 2> t{};
    Complex f12{};
    Complex f21{};
    Complex d{};
    Complex chi_m1{};
    Complex chi_m2{};
    bool singular = false;  // |D| fell below 1e-30
};

Complex mechanical_chi(const BareParams& bare, const FrameConfig& frame, int j,
                       double omega);

/// Closed-form evaluation: mechanics eliminated, 2x2 inversion by the
/// explicit D formula.
SMatrixPoint smatrix(const BareParams& bare, const FrameConfig& frame,
                     const EffectiveCouplings& g, double omega,
                     IoSign io = IoSign::plus_ain);

/// Direct route: solves the 4-mode linear response numerically without
/// eliminating the mechanics, then applies the input-output relations.
SMatrixPoint smatrix_direct(const BareParams& bare, const FrameConfig& frame,
                            const EffectiveCouplings& g, double omega,
                            IoSign io = IoSign::plus_ain);

struct ScatteringResult {
    std::vector<double> omega_grid;
    std::vector<SMatrixPoint> points;
};

std::vector<double> omega_grid(double omega_min, double omega_max, int points);

ScatteringResult sweep_smatrix(const BareParams& bare, const FrameConfig& frame,
                               const EffectiveCouplings& g,
                               const std::vector<double>& grid,
                               IoSign io = IoSign::plus_ain, bool direct = false);

/// Drive settings nulling S12 at the evaluation frequency.
struct NonrecipSolution {
    double required_phase = 0.0;  // varphi target
    double required_v_mag = 0.0;  // |V'|
    double phi_11 = 0.0;          // gauge convention: optical phases zero
    double phi_12 = 0.0;
    double phi_x = 0.0;  // solved
    double g_param = 0.0;
    double residual_s12_abs2 = 0.0;
    double backward_s21_abs2 = 0.0;
    Complex f21_at_zero{};
    DriveConfig drives;            // full drive set with the solution applied
    EffectiveCouplings couplings;  // closed-form couplings at the solution
};

/// Solves the isolation conditions for |V'| and the drive phase at the given
/// frequency (default 0), keeping E1, E2 and the optical phases of `drives`.
/// Throws NoPhysicalDriveError when the required |V'|^2 would be negative and
/// SingularConfigurationError for degenerate parameter sets.
NonrecipSolution isolation_solve(const BareParams& bare, const FrameConfig& frame,
                                 const DriveConfig& drives, const Susceptibilities& chi,
                                 double omega = 0.0, IoSign io = IoSign::plus_ain);

struct BandwidthResult {
    double bandwidth = 0.0;          // rad/s
    double peak_isolation_db = 0.0;  // at omega = 0; capped at 300 dB
};

/// isolation(omega) = 10 log10(|S21|^2/|S12|^2); bandwidth is the contiguous
/// interval around omega = 0 where isolation >= floor_db.
BandwidthResult isolation_bandwidth(const ScatteringResult& result, double floor_db);

}  // namespace nonrecip

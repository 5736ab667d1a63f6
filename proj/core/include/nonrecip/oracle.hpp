#pragma once

#include <map>
#include <optional>
#include <vector>

#include "nonrecip/meanfield.hpp"
#include "nonrecip/scattering.hpp"

namespace nonrecip {

struct IntegratorStats {
    long steps = 0;
    long rejected = 0;
    long rhs_evaluations = 0;
    double min_step = 0.0;
    double max_error_estimate = 0.0;  // worst accepted scaled error
};

/// Uniformly resampled tail of a time-domain integration of the classical
/// mean-field equations.
struct Trajectory {
    std::vector<double> t;
    std::vector<Complex> alpha1;
    std::vector<Complex> alpha2;
    std::vector<Complex> beta1;
    std::vector<Complex> beta2;
    double sample_dt = 0.0;
    double base_period = 0.0;  // 2 pi / omega_plus
    int periods = 0;           // analysis window length in base periods
    IntegratorStats stats;
};

struct IntegratorSettings {
    double t_end = 0.0;  // 0: use 10 / min(gamma_m)
    double tol = 1e-8;   // local error per step, normalized per base period
    int analysis_periods = 8;
    int samples_per_period = 256;
    // Start from the perturbative prediction to shrink the transient; zero
    // state otherwise.
    bool seed_from_catalog = true;
    ChiMode seed_mode = ChiMode::drive_shifted;
    std::optional<FieldAmplitudes> initial;  // overrides seeding when set
};

/// Adaptive Dormand-Prince 5(4) integration of the full nonlinear classical
/// equations. Throws IntegratorError on step-size collapse or a non-finite
/// state.
Trajectory integrate_classical(const BareParams& bare, const DriveConfig& drives,
                               double t_end, double tol,
                               const IntegratorSettings& settings = {});

/// Trapezoidal projection of the trajectory onto e^{i freq t} for each key.
/// Keys whose frequencies coincide (resonant tone merging) receive the same
/// measured value, the projection at that frequency. Throws ProjectionError
/// when the window does not span an integer number of base periods.
std::map<HarmonicKey, Complex> extract_harmonics(const Trajectory& traj,
                                                 const std::vector<HarmonicKey>& keys,
                                                 const HarmonicCatalog& catalog);

/// One comparison row: all catalog keys sharing a frequency are summed and
/// compared against the single measured projection at that frequency.
struct ComparisonRow {
    std::vector<HarmonicKey> keys;
    FieldMode mode = FieldMode::a1;
    double frequency = 0.0;
    Complex analytic{};
    Complex measured{};
    double rel_err = 0.0;
    int min_order = 0;
    bool pure_order2 = false;  // every key in the group has order 2
};

struct HarmonicComparison {
    std::vector<ComparisonRow> rows;
    double worst_rel_err = 0.0;
    std::size_t worst_row = 0;
    double worst_order2_rel_err = 0.0;  // over pure order-2 rows
    // Same comparison at half drive amplitude and the shrink factor of the
    // worst order-2 error (residual one expansion order higher).
    double half_scale_worst_order2 = 0.0;
    double scaling_ratio = 0.0;
    double periodicity_residual = 0.0;  // ||x(t+T)-x(t)|| / ||x|| over the window
    // Residual of the printed prefactor relation
    // alpha(2,-X)^(2) = -(chi_1/chi_1*) conj(alpha(2,X)^(2)) against the
    // directly computed entry; reported, never used to build the catalog.
    double minus_x_relation_residual = 0.0;
    double minus_3x_relation_residual = 0.0;
    ChiMode mode = ChiMode::drive_shifted;
};

struct VerifySettings {
    IntegratorSettings integrator;
    ChiMode mode = ChiMode::drive_shifted;
    double drive_scale = 1.0;
    bool run_half_scale = true;
};

/// Integrates, extracts harmonics and compares them with the perturbative
/// catalog, at drive scale 1 and (optionally) 1/2.
HarmonicComparison verify_expansion(const BareParams& bare, const DriveConfig& drives,
                                    const VerifySettings& settings = {});

struct EquivalenceResult {
    double max_rel_deviation = 0.0;
    int singular_points = 0;  // excluded grid points
};

/// Max over the grid and all eight S/T entries of the relative deviation
/// between the closed-form and direct evaluations.
EquivalenceResult smatrix_equivalence(const BareParams& bare, const FrameConfig& frame,
                                      const EffectiveCouplings& g,
                                      const std::vector<double>& grid,
                                      IoSign io = IoSign::plus_ain);

}  // namespace nonrecip

#pragma once

#include "nonrecip/rwa_audit.hpp"
#include "nonrecip/scattering.hpp"

namespace nonrecip {

/// Everything needed to rebuild the isolated converter from scratch: bare
/// rates, frame targets and the fixed optical drives. The rf drive is always
/// re-solved from the isolation conditions.
struct ScenarioConfig {
    // Bare rates; omega_1/omega_2/delta_l/omega_lc0 are derived, not inputs.
    double g0_11 = 0.0, g0_12 = 0.0, g0_21 = 0.0, g0_22 = 0.0;
    double kappa = 0.0;
    double gamma_lc = 0.0;
    double gamma_m1 = 0.0, gamma_m2 = 0.0;
    double nbar_1 = 0.0, nbar_2 = 0.0, ntilde_2 = 0.0;
    double target_omega_lc = 0.0;
    double omega_x = 0.0;
    double delta = 0.0;
    double e1 = 0.0, e2 = 0.0;
    double phi_11 = 0.0, phi_12 = 0.0;
    double rwa_margin = 0.1;
    ChiMode mode = ChiMode::paper_literal;
    IoSign io = IoSign::plus_ain;

    bool operator==(const ScenarioConfig&) const = default;
};

/// The assembled pipeline state: resonance-fixed frequencies, resolved bare
/// frame, solved drives, couplings, the S(0) solution and the audit.
struct ScenarioBuild {
    BareParams bare;
    FrameConfig frame;
    FrameResolution resolution;
    DriveConfig drives;
    Susceptibilities chi;
    NonrecipSolution solution;
    CoefficientCatalog coefficients;
    AuditReport audit;
};

/// Resonance conditions -> frame resolution -> isolation solve -> audit.
/// Propagates NoPhysicalDriveError / SingularConfigurationError from the
/// solve; callers that must stay total (the optimizer) catch those.
ScenarioBuild build_scenario(const ScenarioConfig& config);

/// Fig. 3 caption parameter sets.
ScenarioConfig fig3_panel(char panel);

}  // namespace nonrecip

#include "nonrecip/scenario.hpp"

#include "nonrecip/errors.hpp"

namespace nonrecip {

ScenarioBuild build_scenario(const ScenarioConfig& config) {
    ScenarioBuild out;

    const auto res =
        apply_resonance_conditions(config.target_omega_lc, config.omega_x, config.delta);

    out.bare.g0_11 = config.g0_11;
    out.bare.g0_12 = config.g0_12;
    out.bare.g0_21 = config.g0_21;
    out.bare.g0_22 = config.g0_22;
    out.bare.kappa = config.kappa;
    out.bare.gamma_lc = config.gamma_lc;
    out.bare.gamma_m1 = config.gamma_m1;
    out.bare.gamma_m2 = config.gamma_m2;
    out.bare.omega_1 = res.omega_1;
    out.bare.omega_2 = res.omega_2;
    out.bare.nbar_1 = config.nbar_1;
    out.bare.nbar_2 = config.nbar_2;
    out.bare.ntilde_2 = config.ntilde_2;

    out.drives.e1 = config.e1;
    out.drives.e2 = config.e2;
    out.drives.phi_11 = config.phi_11;
    out.drives.phi_12 = config.phi_12;
    out.drives.omega_plus = res.omega_plus;
    out.drives.omega_x = config.omega_x;

    out.resolution = resolve_frame(out.bare, out.drives, res.detuning,
                                   config.target_omega_lc, config.mode);
    out.bare.delta_l = out.resolution.delta_l;
    out.bare.omega_lc0 = out.resolution.omega_lc0;
    out.frame = out.resolution.frame;

    out.chi = susceptibilities(out.bare, out.frame, config.mode);
    out.solution =
        isolation_solve(out.bare, out.frame, out.drives, out.chi, 0.0, config.io);
    out.drives = out.solution.drives;

    const auto harmonics = perturbative_harmonics(out.bare, out.drives, out.chi);
    out.coefficients = coefficient_catalog(harmonics, out.bare, out.frame);
    out.audit =
        rwa_margin(out.coefficients, out.bare.kappa, out.bare.gamma_lc, config.rwa_margin);
    return out;
}

ScenarioConfig fig3_panel(char panel) {
    ScenarioConfig c;
    c.g0_11 = 8.0;
    c.g0_12 = 20.0;
    c.g0_21 = 20.0;
    c.g0_22 = 4.0;
    c.target_omega_lc = 6.0e6;
    c.omega_x = 20.0e6;
    if (panel == 'a') {
        c.delta = -2.6e3;
        c.gamma_lc = 7.88e4;
        c.gamma_m1 = 4.0e3;
        c.gamma_m2 = 4.0e3;
        c.kappa = 8.0e5;
        c.e1 = 48.4e9;
        c.e2 = 97.0e9;
    } else if (panel == 'b') {
        c.delta = -4.0e3;
        c.gamma_lc = 9.0e4;
        c.gamma_m1 = 6.0e3;
        c.gamma_m2 = 6.0e3;
        c.kappa = 9.0e5;
        c.e1 = 48.7e9;
        c.e2 = 97.0e9;
    } else {
        throw InvalidParameterError("unknown panel; expected 'a' or 'b'");
    }
    return c;
}

}  // namespace nonrecip

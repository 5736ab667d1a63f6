#pragma once

#include <array>
#include <string>
#include <vector>

#include "nonrecip/couplings.hpp"
#include "nonrecip/meanfield.hpp"

namespace nonrecip {

/// One oscillating coefficient of the linearized equations in the rotating
/// frame: a frequency-shift term (Theta), a field-enhanced coupling (G) or
/// the rf self-interaction (Gamma).
struct CoefficientEntry {
    std::string name;
    Complex amplitude{};   // rad/s
    double frequency = 0.0;  // rad/s; ~0 for the four static terms
    char equation = 'o';     // 'o' optical, 'r' rf (G terms also feed the
                             // mechanical equations; gamma_m is reported
                             // separately as informational)
    bool is_static = false;
};

struct CoefficientCatalog {
    std::vector<CoefficientEntry> entries;  // sorted by name
    // The four zero-frequency couplings as identified in the static set:
    // g11 ~ G-(1,1,0,+), g12 = G-(1,2,+2,-), g21 = -G-(2,1,-,+2),
    // g22 ~ -conj(G-(2,2,+1,0)). These include the second-order corrections
    // that the closed forms drop for g11/g22.
    Complex static_g11{};
    Complex static_g12{};
    Complex static_g21{};
    Complex static_g22{};
    double omega_plus = 0.0;
    double omega_x = 0.0;
    double delta = 0.0;
    double gamma_m1 = 0.0;
    double gamma_m2 = 0.0;
};

/// Enumerates all Theta, G and Gamma coefficients with their frequencies.
/// Requires the resonance conditions to hold (residuals below 1e-6*omega_plus),
/// otherwise throws MisconfiguredFrameError.
CoefficientCatalog coefficient_catalog(const HarmonicCatalog& harmonics,
                                       const BareParams& bare, const FrameConfig& frame);

struct AuditRatio {
    std::string name;
    double ratio = 0.0;  // |amplitude| / |frequency|
    double frequency = 0.0;
};

struct AuditReport {
    std::vector<AuditRatio> ratios;  // nonzero-frequency entries only
    double worst_ratio = 0.0;
    std::string worst_name;
    // Decay rates against the slowest oscillation of the equation they damp.
    double kappa_ratio = 0.0;       // kappa / min |freq| over optical entries
    double gamma_lc_ratio = 0.0;    // (gamma_lc/2) / min |freq| over rf entries
    double gamma_m_ratio = 0.0;     // informational: max(gamma_mj/2) / min |freq|
    double min_frequency = 0.0;
    double delta_ratio = 0.0;       // |delta| / max |static g|
    double margin = 0.0;
    // pass gates on the coefficient-amplitude ratios and the delta bound (the
    // condition the reduction verifies numerically); strict_pass additionally
    // gates the decay-rate ratios at the same margin.
    bool pass = false;
    double strict_worst_ratio = 0.0;
    bool strict_pass = false;
};

/// margin quantifies "much smaller than": every ratio must be <= margin.
AuditReport rwa_margin(const CoefficientCatalog& catalog, double kappa, double gamma_lc,
                       double margin);

}  // namespace nonrecip

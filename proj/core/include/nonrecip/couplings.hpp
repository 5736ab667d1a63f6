#pragma once

#include <utility>

#include "nonrecip/frame.hpp"
#include "nonrecip/meanfield.hpp"
#include "nonrecip/params.hpp"

namespace nonrecip {

enum class CouplingSource { closed_form, assembled };

/// The four static effective couplings of the reduced model plus the real
/// combinations mu, nu they are built from.
struct EffectiveCouplings {
    Complex g11;
    Complex g12;
    Complex g21;
    Complex g22;
    double mu = 0.0;
    double nu = 0.0;
    CouplingSource source = CouplingSource::closed_form;
};

/// mu = g0_11 g0_21 Im{chi'_m1} + g0_12 g0_22 Im{chi'_m2},
/// nu = g0_11^2  Im{chi'_m1} + g0_12^2  Im{chi'_m2}.
std::pair<double, double> mu_nu(const BareParams& bare, const Susceptibilities& chi);

/// Closed forms in terms of chi_1, chi_lc and the drives.
EffectiveCouplings effective_couplings_closed(const BareParams& bare,
                                              const DriveConfig& drives,
                                              const Susceptibilities& chi);

/// Same couplings assembled verbatim from catalog entries:
///   g11 = g0_11 alpha(1,+)^(0)
///   g12 = g0_12 [alpha(1,2X,-)^(2) + alpha(1,+3)^(2)]
///   g21 = 4 g0_21 Re{alpha(2,X,-2)^(2) + alpha(2,-X,+2)^(2)}
///   g22 = 2 g0_22 conj(alpha(2,X)^(0))
/// Throws IncompleteCatalogError when an entry is missing.
EffectiveCouplings effective_couplings_assembled(const HarmonicCatalog& catalog,
                                                 const BareParams& bare);

/// Quantities entering the isolation conditions. varphi depends on the drive
/// phases only; g_param = |chi_lc V' / (chi_1 E1)|^2.
struct IsolationQuantities {
    Complex r;
    Complex s;
    double g_param = 0.0;
    double varphi = 0.0;
};

/// chi_m_ratio is chi_m1(omega)/chi_m2(omega) at the evaluation frequency
/// (omega = 0 for the isolation solve). Throws SingularConfigurationError
/// when a required denominator vanishes.
IsolationQuantities isolation_quantities(const BareParams& bare, const DriveConfig& drives,
                                         const Susceptibilities& chi, Complex chi_m_ratio);

}  // namespace nonrecip

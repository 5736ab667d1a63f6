#pragma once

#include <array>
#include <compare>
#include <map>
#include <string>
#include <vector>

#include "nonrecip/frame.hpp"
#include "nonrecip/params.hpp"

namespace nonrecip {

enum class FieldMode : int { a1 = 0, a2 = 1, b1 = 2, b2 = 3 };

std::string to_string(FieldMode mode);

/// Identifies one harmonic of one mean field: the component oscillating at
/// n_plus*omega_plus + n_x*omega_x, at the given perturbative order in the
/// bare couplings.
struct HarmonicKey {
    FieldMode mode;
    int order;   // 0, 1 or 2
    int n_plus;  // multiple of omega_plus
    int n_x;     // multiple of omega_x

    auto operator<=>(const HarmonicKey&) const = default;
};

/// Human-readable name of the expansion coefficient behind a key,
/// e.g. "alpha(1,+)^(0)" or "beta(2,-2X)^(1)".
std::string symbol(const HarmonicKey& key);

/// All perturbative mean-field coefficients, keyed by (mode, order, label).
struct HarmonicCatalog {
    std::map<HarmonicKey, Complex> entries;
    double omega_plus = 0.0;
    double omega_x = 0.0;

    double frequency(const HarmonicKey& key) const {
        return key.n_plus * omega_plus + key.n_x * omega_x;
    }
    /// Throws IncompleteCatalogError for a missing key.
    Complex at(const HarmonicKey& key) const;
    bool contains(const HarmonicKey& key) const { return entries.count(key) != 0; }
    std::vector<HarmonicKey> keys() const;
};

struct FieldAmplitudes {
    Complex alpha1;
    Complex alpha2;
    Complex beta1;
    Complex beta2;
};

/// Closed-form long-time-limit expansion of the classical mean fields up to
/// second order in the bare couplings. The susceptibility mode selects the
/// denominator convention for every entry.
HarmonicCatalog perturbative_harmonics(const BareParams& bare, const DriveConfig& drives,
                                       const Susceptibilities& chi);

/// Assembles the periodic mean fields at time t from the catalog.
FieldAmplitudes amplitude_at_time(const HarmonicCatalog& catalog, double t);

}  // namespace nonrecip

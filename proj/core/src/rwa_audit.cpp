#include "nonrecip/rwa_audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nonrecip/errors.hpp"

namespace nonrecip {

namespace {

std::string sign_char(int b) { return b > 0 ? "+" : "-"; }

}  // namespace

CoefficientCatalog coefficient_catalog(const HarmonicCatalog& harmonics,
                                       const BareParams& bare, const FrameConfig& frame) {
    const double wp = frame.omega_plus();
    const double wx = frame.omega_x();
    const double tol = 1e-6 * wp;
    // The term grouping below merges tones assuming the resonance conditions;
    // refuse to enumerate a detuned frame.
    const double res1 = std::abs(frame.omega_tilde_1 - frame.omega_lc);
    const double res2 = std::abs(frame.omega_tilde_2 - (frame.omega_lc + wx));
    const double res3 = std::abs(wx - 2.0 * wp);
    const double res4 = std::abs(harmonics.omega_plus - wp) + std::abs(harmonics.omega_x - wx);
    if (res1 > tol || res2 > tol || res3 > tol || res4 > tol) {
        throw MisconfiguredFrameError("resonance conditions violated; worst residual " +
                                      std::to_string(std::max({res1, res2, res3, res4})) +
                                      " rad/s");
    }

    const auto at = [&](FieldMode mode, int order, int np, int nx) {
        return harmonics.at({mode, order, np, nx});
    };

    CoefficientCatalog cat;
    cat.omega_plus = wp;
    cat.omega_x = wx;
    cat.delta = frame.delta;
    cat.gamma_m1 = bare.gamma_m1;
    cat.gamma_m2 = bare.gamma_m2;

    const auto add = [&](std::string name, Complex amplitude, double frequency,
                         char equation) {
        CoefficientEntry e;
        e.name = std::move(name);
        e.amplitude = amplitude;
        e.frequency = frequency;
        e.equation = equation;
        e.is_static = std::abs(frequency) < tol;
        cat.entries.push_back(std::move(e));
    };

    // Theta_{l,sigma,xi}: oscillating frequency shifts from the mechanical AC
    // components. Prefactor -(-2)^l / 2.
    for (int ell = 1; ell <= 2; ++ell) {
        const double pref = ell == 1 ? 1.0 : -2.0;
        const char eq = ell == 1 ? 'o' : 'r';
        for (int xi : {+1, -1}) {
            Complex amp_p = 0.0, amp_x = 0.0;
            for (int j = 1; j <= 2; ++j) {
                const FieldMode b = j == 1 ? FieldMode::b1 : FieldMode::b2;
                amp_p += bare.g0(ell, j) *
                         (at(b, 1, 2 * xi, 0) + std::conj(at(b, 1, -2 * xi, 0)));
                amp_x += bare.g0(ell, j) *
                         (at(b, 1, 0, 2 * xi) + std::conj(at(b, 1, 0, -2 * xi)));
            }
            add("Theta(" + std::to_string(ell) + ",+," + sign_char(xi) + ")", pref * amp_p,
                xi * 2.0 * wp, eq);
            add("Theta(" + std::to_string(ell) + ",X," + sign_char(xi) + ")", pref * amp_x,
                xi * 2.0 * wx, eq);
        }
    }

    // G^{b}_{1,j}: optical-mechanical couplings, one entry per alpha1 tone
    // (the 3 omega_plus and 2 omega_x - omega_plus lines merge on resonance).
    for (int j = 1; j <= 2; ++j) {
        const double g1j = bare.g0(1, j);
        const double wt = j == 1 ? frame.omega_tilde_1 : frame.omega_tilde_2;
        for (int b : {+1, -1}) {
            const double base = frame.detuning + b * wt;
            const std::string head = "G" + sign_char(b) + "(1," + std::to_string(j) + ",";
            add(head + "0,+)", g1j * (at(FieldMode::a1, 0, 1, 0) + at(FieldMode::a1, 2, 1, 0)),
                base + wp, 'o');
            add(head + "0,-)",
                g1j * (at(FieldMode::a1, 0, -1, 0) + at(FieldMode::a1, 2, -1, 0)), base - wp,
                'o');
            add(head + "+2,+)", g1j * at(FieldMode::a1, 2, 1, 2), base + 2.0 * wx + wp, 'o');
            add(head + "-2,-)", g1j * at(FieldMode::a1, 2, -1, -2), base - 2.0 * wx - wp, 'o');
            add(head + "+2,-)",
                g1j * (at(FieldMode::a1, 2, -1, 2) + at(FieldMode::a1, 2, 3, 0)),
                base + 2.0 * wx - wp, 'o');
            add(head + "-2,+)",
                g1j * (at(FieldMode::a1, 2, 1, -2) + at(FieldMode::a1, 2, -3, 0)),
                base - 2.0 * wx + wp, 'o');
        }
    }

    // G^{b}_{2,j}: rf-mechanical couplings built from Re{alpha2} components.
    const Complex a2x_tot = at(FieldMode::a2, 0, 0, 1) + at(FieldMode::a2, 2, 0, 1);
    const Complex a2mx = at(FieldMode::a2, 2, 0, -1);
    for (int j = 1; j <= 2; ++j) {
        const double g2j = bare.g0(2, j);
        const double wt = j == 1 ? frame.omega_tilde_1 : frame.omega_tilde_2;
        for (int b : {+1, -1}) {
            const double base = frame.omega_lc + b * wt;
            const std::string head = "G" + sign_char(b) + "(2," + std::to_string(j) + ",";
            add(head + "+1,0)", -2.0 * g2j * (a2x_tot + std::conj(a2mx)), base + wx, 'r');
            add(head + "-1,0)", -2.0 * g2j * (std::conj(a2x_tot) + a2mx), base - wx, 'r');
            add(head + "+3,0)",
                -2.0 * g2j *
                    (at(FieldMode::a2, 2, 0, 3) + std::conj(at(FieldMode::a2, 2, 0, -3))),
                base + 3.0 * wx, 'r');
            add(head + "-3,0)",
                -2.0 * g2j *
                    (at(FieldMode::a2, 2, 0, -3) + std::conj(at(FieldMode::a2, 2, 0, 3))),
                base - 3.0 * wx, 'r');
            add(head + "+,+2)",
                -2.0 * g2j *
                    (at(FieldMode::a2, 2, 2, 1) + std::conj(at(FieldMode::a2, 2, -2, -1))),
                base + wx + 2.0 * wp, 'r');
            add(head + "-,-2)",
                -2.0 * g2j *
                    (at(FieldMode::a2, 2, -2, -1) + std::conj(at(FieldMode::a2, 2, 2, 1))),
                base - wx - 2.0 * wp, 'r');
            add(head + "-,+2)",
                -4.0 * g2j *
                    std::real(at(FieldMode::a2, 2, -2, 1) + at(FieldMode::a2, 2, 2, -1)),
                base - wx + 2.0 * wp, 'r');
        }
    }

    // Gamma: rf self-interaction in the rotating frame, at 2 omega_lc and its
    // sidebands; the oscillating parts are half the Theta_2 amplitudes.
    {
        Complex gamma0 = 0.0;
        for (int j = 1; j <= 2; ++j) {
            const FieldMode b = j == 1 ? FieldMode::b1 : FieldMode::b2;
            gamma0 += bare.g0(2, j) * std::real(at(b, 1, 0, 0));
        }
        add("Gamma(0)", -2.0 * gamma0, 2.0 * frame.omega_lc, 'r');
        for (int xi : {+1, -1}) {
            Complex amp_p = 0.0, amp_x = 0.0;
            for (int j = 1; j <= 2; ++j) {
                const FieldMode b = j == 1 ? FieldMode::b1 : FieldMode::b2;
                amp_p += bare.g0(2, j) *
                         (at(b, 1, 2 * xi, 0) + std::conj(at(b, 1, -2 * xi, 0)));
                amp_x += bare.g0(2, j) *
                         (at(b, 1, 0, 2 * xi) + std::conj(at(b, 1, 0, -2 * xi)));
            }
            add("Gamma(+," + sign_char(xi) + ")", -amp_p, 2.0 * (frame.omega_lc + xi * wp),
                'r');
            add("Gamma(X," + sign_char(xi) + ")", -amp_x, 2.0 * (frame.omega_lc + xi * wx),
                'r');
        }
    }

    std::sort(cat.entries.begin(), cat.entries.end(),
              [](const CoefficientEntry& a, const CoefficientEntry& b) { return a.name < b.name; });

    // The static set must be exactly the four zero-frequency couplings.
    int statics = 0;
    for (const auto& e : cat.entries) {
        if (!e.is_static) {
            continue;
        }
        ++statics;
        if (e.name == "G-(1,1,0,+)") {
            cat.static_g11 = e.amplitude;
        } else if (e.name == "G-(1,2,+2,-)") {
            cat.static_g12 = e.amplitude;
        } else if (e.name == "G-(2,1,-,+2)") {
            cat.static_g21 = -e.amplitude;
        } else if (e.name == "G-(2,2,+1,0)") {
            cat.static_g22 = -std::conj(e.amplitude);
        } else {
            throw MisconfiguredFrameError("unexpected static coefficient " + e.name);
        }
    }
    if (statics != 4) {
        throw MisconfiguredFrameError("expected 4 static coefficients, found " +
                                      std::to_string(statics));
    }
    return cat;
}

AuditReport rwa_margin(const CoefficientCatalog& catalog, double kappa, double gamma_lc,
                       double margin) {
    if (!(margin > 0.0 && margin <= 1.0)) {
        throw InvalidParameterError("margin must lie in (0, 1]");
    }
    AuditReport report;
    report.margin = margin;

    double min_freq = std::numeric_limits<double>::infinity();
    double min_freq_optical = min_freq;
    double min_freq_rf = min_freq;
    for (const auto& e : catalog.entries) {
        if (e.is_static) {
            continue;
        }
        const double f = std::abs(e.frequency);
        min_freq = std::min(min_freq, f);
        if (e.equation == 'o') {
            min_freq_optical = std::min(min_freq_optical, f);
        } else {
            min_freq_rf = std::min(min_freq_rf, f);
        }
        AuditRatio row;
        row.name = e.name;
        row.frequency = e.frequency;
        row.ratio = std::abs(e.amplitude) / f;
        if (row.ratio > report.worst_ratio) {
            report.worst_ratio = row.ratio;
            report.worst_name = row.name;
        }
        report.ratios.push_back(std::move(row));
    }

    report.min_frequency = min_freq;
    report.kappa_ratio = kappa / min_freq_optical;
    report.gamma_lc_ratio = 0.5 * gamma_lc / min_freq_rf;
    report.gamma_m_ratio = 0.5 * std::max(catalog.gamma_m1, catalog.gamma_m2) / min_freq;

    const double max_g =
        std::max({std::abs(catalog.static_g11), std::abs(catalog.static_g12),
                  std::abs(catalog.static_g21), std::abs(catalog.static_g22)});
    report.delta_ratio = max_g > 0.0
                             ? std::abs(catalog.delta) / max_g
                             : std::numeric_limits<double>::infinity();

    report.pass = report.worst_ratio <= margin && report.delta_ratio <= 1.0;
    report.strict_worst_ratio =
        std::max({report.worst_ratio, report.kappa_ratio, report.gamma_lc_ratio});
    report.strict_pass = report.pass && report.strict_worst_ratio <= margin;
    return report;
}

}  // namespace nonrecip

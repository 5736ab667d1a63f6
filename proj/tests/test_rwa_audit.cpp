#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "nonrecip/errors.hpp"
#include "nonrecip/rwa_audit.hpp"
#include "nonrecip/scenario.hpp"

using namespace nonrecip;

namespace {

const ScenarioBuild& fig3a() {
    static const ScenarioBuild build = build_scenario(fig3_panel('a'));
    return build;
}

CoefficientCatalog fig3a_coefficients() {
    const auto& b = fig3a();
    const auto harmonics = perturbative_harmonics(b.bare, b.drives, b.chi);
    return coefficient_catalog(harmonics, b.bare, b.frame);
}

}  // namespace

TEST_CASE("catalog enumerates 65 coefficients with exactly four static ones") {
    const auto cat = fig3a_coefficients();
    CHECK(cat.entries.size() == 65);
    std::set<std::string> statics;
    for (const auto& e : cat.entries) {
        if (e.is_static) {
            statics.insert(e.name);
        }
    }
    const std::set<std::string> expected = {"G-(1,1,0,+)", "G-(1,2,+2,-)", "G-(2,1,-,+2)",
                                            "G-(2,2,+1,0)"};
    CHECK(statics == expected);
}

TEST_CASE("minimum nonzero coefficient frequency at the Fig. 3 tones") {
    // Smallest oscillating line is |2 omega_lc - 2 omega_plus| = 8e6 rad/s.
    const auto cat = fig3a_coefficients();
    double min_freq = 1e300;
    for (const auto& e : cat.entries) {
        if (!e.is_static) {
            min_freq = std::min(min_freq, std::abs(e.frequency));
        }
    }
    CHECK(min_freq == doctest::Approx(8e6).epsilon(1e-9));
}

TEST_CASE("static couplings reproduce the effective couplings") {
    const auto& b = fig3a();
    const auto cat = fig3a_coefficients();
    const auto g = effective_couplings_closed(b.bare, b.drives, b.chi);
    // g12 and g21 identifications are exact.
    CHECK(std::abs(cat.static_g12 - g.g12) <= 1e-9 * std::abs(g.g12));
    CHECK(std::abs(cat.static_g21 - g.g21) <= 1e-9 * std::abs(g.g21));
    // g11 and g22 differ by the second-order corrections the closed forms drop.
    const auto harmonics = perturbative_harmonics(b.bare, b.drives, b.chi);
    const double bound11 = std::abs(harmonics.at({FieldMode::a1, 2, 1, 0})) /
                           std::abs(harmonics.at({FieldMode::a1, 0, 1, 0}));
    const double bound22 = std::abs(harmonics.at({FieldMode::a2, 2, 0, 1}) +
                                    std::conj(harmonics.at({FieldMode::a2, 2, 0, -1}))) /
                           std::abs(harmonics.at({FieldMode::a2, 0, 0, 1}));
    CHECK(std::abs(cat.static_g11 - g.g11) / std::abs(g.g11) <= bound11 * (1.0 + 1e-9));
    CHECK(std::abs(cat.static_g22 - g.g22) / std::abs(g.g22) <= bound22 * (1.0 + 1e-9));
    CHECK(bound11 < 0.05);
    CHECK(bound22 < 0.05);
}

TEST_CASE("resummation reproduces the time-dependent coefficients") {
    const auto& b = fig3a();
    const auto harmonics = perturbative_harmonics(b.bare, b.drives, b.chi);
    const auto cat = coefficient_catalog(harmonics, b.bare, b.frame);

    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> uniform(0.0, 2.0 * kPi / b.frame.omega_plus());

    const auto catalog_sum = [&](const std::string& prefix, double t) {
        Complex acc = 0.0;
        for (const auto& e : cat.entries) {
            if (e.name.rfind(prefix, 0) == 0) {
                acc += e.amplitude * std::exp(kImag * e.frequency * t);
            }
        }
        return acc;
    };

    for (int sample = 0; sample < 16; ++sample) {
        const double t = uniform(rng);
        const auto x = amplitude_at_time(harmonics, t);
        const Complex beta[2] = {x.beta1, x.beta2};
        const Complex beta_dc[2] = {harmonics.at({FieldMode::b1, 1, 0, 0}),
                                    harmonics.at({FieldMode::b2, 1, 0, 0})};

        // Theta_l(t) = -(-2)^l sum_j g0_lj Re{beta_j(t) - beta_j_dc}
        for (int ell = 1; ell <= 2; ++ell) {
            const double pref = ell == 1 ? 2.0 : -4.0;
            Complex direct = 0.0;
            for (int j = 1; j <= 2; ++j) {
                direct += pref * b.bare.g0(ell, j) * (beta[j - 1] - beta_dc[j - 1]).real();
            }
            const Complex summed = catalog_sum("Theta(" + std::to_string(ell) + ",", t);
            CHECK(std::abs(summed - direct) <= 1e-9 * std::abs(direct));
        }

        // G_{1j}^{b}(t) = g0_1j alpha_1(t) e^{i(detuning + b omega_tilde_j) t}
        for (int j = 1; j <= 2; ++j) {
            const double wt = j == 1 ? b.frame.omega_tilde_1 : b.frame.omega_tilde_2;
            for (int sign : {+1, -1}) {
                const Complex direct = b.bare.g0(1, j) * x.alpha1 *
                                       std::exp(kImag * (b.frame.detuning + sign * wt) * t);
                const std::string prefix =
                    std::string("G") + (sign > 0 ? "+" : "-") + "(1," + std::to_string(j) + ",";
                const Complex summed = catalog_sum(prefix, t);
                CHECK(std::abs(summed - direct) <= 1e-9 * std::abs(direct));
            }
        }

        // G_{2j}^{b}(t) = -4 g0_2j Re{alpha_2(t)} e^{i(omega_lc + b omega_tilde_j) t}
        for (int j = 1; j <= 2; ++j) {
            const double wt = j == 1 ? b.frame.omega_tilde_1 : b.frame.omega_tilde_2;
            for (int sign : {+1, -1}) {
                const Complex direct = -4.0 * b.bare.g0(2, j) * x.alpha2.real() *
                                       std::exp(kImag * (b.frame.omega_lc + sign * wt) * t);
                const std::string prefix =
                    std::string("G") + (sign > 0 ? "+" : "-") + "(2," + std::to_string(j) + ",";
                const Complex summed = catalog_sum(prefix, t);
                CHECK(std::abs(summed - direct) <= 1e-9 * std::abs(direct));
            }
        }

        // Gamma(t) = -2 sum_j g0_2j Re{beta_j(t)} e^{2 i omega_lc t}
        Complex gamma_direct = 0.0;
        for (int j = 1; j <= 2; ++j) {
            gamma_direct += -2.0 * b.bare.g0(2, j) * beta[j - 1].real();
        }
        gamma_direct *= std::exp(2.0 * kImag * b.frame.omega_lc * t);
        const Complex gamma_summed = catalog_sum("Gamma(", t);
        CHECK(std::abs(gamma_summed - gamma_direct) <= 1e-9 * std::abs(gamma_direct));
    }
}

TEST_CASE("Gamma sidebands are half the Theta_2 amplitudes") {
    const auto cat = fig3a_coefficients();
    const auto find = [&](const std::string& name) -> Complex {
        for (const auto& e : cat.entries) {
            if (e.name == name) {
                return e.amplitude;
            }
        }
        FAIL("missing entry ", name);
        return {};
    };
    for (const std::string tone : {"+", "X"}) {
        for (const std::string sign : {"+", "-"}) {
            const Complex theta = find("Theta(2," + tone + "," + sign + ")");
            const Complex gamma = find("Gamma(" + tone + "," + sign + ")");
            CHECK(std::abs(gamma - 0.5 * theta) <= 1e-12 * std::abs(theta));
        }
    }
}

TEST_CASE("zero bare couplings: only order-0-fed G entries survive") {
    auto bare = fig3a().bare;
    bare.g0_11 = bare.g0_12 = bare.g0_21 = bare.g0_22 = 0.0;
    const auto harmonics = perturbative_harmonics(bare, fig3a().drives, fig3a().chi);
    const auto cat = coefficient_catalog(harmonics, bare, fig3a().frame);
    for (const auto& e : cat.entries) {
        CHECK(std::abs(e.amplitude) == 0.0);
    }
}

TEST_CASE("misconfigured frame is rejected") {
    const auto& b = fig3a();
    const auto harmonics = perturbative_harmonics(b.bare, b.drives, b.chi);
    FrameConfig detuned = b.frame;
    detuned.omega_tilde_1 += 1e3;
    CHECK_THROWS_AS(coefficient_catalog(harmonics, b.bare, detuned),
                    MisconfiguredFrameError);
}

TEST_CASE("audit passes the Fig. 3(a) point at margin 0.1") {
    const auto cat = fig3a_coefficients();
    const auto report = rwa_margin(cat, fig3a().bare.kappa, fig3a().bare.gamma_lc, 0.1);
    CHECK(report.pass);
    CHECK(report.worst_ratio < 0.1);
    CHECK(report.worst_ratio > 0.01);  // dominant ratio is O(1e-2)
    CHECK(report.delta_ratio <= 1.0);
    CHECK(report.min_frequency == doctest::Approx(8e6).epsilon(1e-9));
    // The decay-rate comparisons sit exactly at the margin for panel (a).
    CHECK(report.kappa_ratio == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(report.gamma_lc_ratio < 0.01);
}

TEST_CASE("audit fails when a coefficient grows beyond the margin") {
    auto cat = fig3a_coefficients();
    for (auto& e : cat.entries) {
        if (!e.is_static && e.name == "G-(1,2,0,-)") {
            e.amplitude *= 50.0;
        }
    }
    const auto report = rwa_margin(cat, fig3a().bare.kappa, fig3a().bare.gamma_lc, 0.1);
    CHECK_FALSE(report.pass);
    CHECK(report.worst_name == "G-(1,2,0,-)");
}

TEST_CASE("audit ratios never decrease with drive magnitude") {
    const auto& b = fig3a();
    std::vector<double> worst;
    for (const double scale : {0.5, 1.0, 2.0}) {
        DriveConfig d = b.drives;
        d.e1 *= scale;
        d.e2 *= scale;
        d.v_mag *= scale;
        const auto harmonics = perturbative_harmonics(b.bare, d, b.chi);
        const auto cat = coefficient_catalog(harmonics, b.bare, b.frame);
        const auto report = rwa_margin(cat, b.bare.kappa, b.bare.gamma_lc, 0.1);
        worst.push_back(report.worst_ratio);
    }
    CHECK(worst[0] < worst[1]);
    CHECK(worst[1] < worst[2]);
}

TEST_CASE("margin outside (0, 1] is rejected") {
    const auto cat = fig3a_coefficients();
    CHECK_THROWS_AS(rwa_margin(cat, 8e5, 7.88e4, 0.0), InvalidParameterError);
    CHECK_THROWS_AS(rwa_margin(cat, 8e5, 7.88e4, 1.5), InvalidParameterError);
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "nonrecip/errors.hpp"
#include "nonrecip/oracle.hpp"
#include "nonrecip/scattering.hpp"
#include "nonrecip/scenario.hpp"

using namespace nonrecip;

namespace {

const ScenarioBuild& fig3a() {
    static const ScenarioBuild build = build_scenario(fig3_panel('a'));
    return build;
}

EffectiveCouplings random_couplings(std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> mag(0.1 * scale, scale);
    std::uniform_real_distribution<double> phase(-kPi, kPi);
    EffectiveCouplings g;
    g.g11 = std::polar(mag(rng), phase(rng));
    g.g12 = std::polar(mag(rng), phase(rng));
    g.g21 = std::polar(mag(rng), phase(rng));
    g.g22 = std::polar(mag(rng), phase(rng));
    return g;
}

BareParams random_bare(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    BareParams p = fig3a().bare;
    p.kappa = 2e5 + 1e6 * u(rng);
    p.gamma_lc = 2e4 + 1e5 * u(rng);
    p.gamma_m1 = 1e3 + 1e4 * u(rng);
    p.gamma_m2 = 1e3 + 1e4 * u(rng);
    return p;
}

}  // namespace

TEST_CASE("decoupled system: no transmission, analytic determinant") {
    const auto& b = fig3a();
    EffectiveCouplings g{};  // all zero
    const double w = 7.3e3;
    const auto p = smatrix(b.bare, b.frame, g, w);
    CHECK(std::abs(p.s[0][1]) == 0.0);
    CHECK(std::abs(p.s[1][0]) == 0.0);
    const Complex expected_d =
        Complex(b.bare.kappa, -w) * Complex(0.5 * b.bare.gamma_lc, -w);
    CHECK(std::abs(p.d - expected_d) <= 1e-12 * std::abs(expected_d));
    // Printed input-output sign: a decoupled port reflects with |S| = 3 at
    // resonance; the passive convention gives 1.
    const auto p0 = smatrix(b.bare, b.frame, g, 0.0, IoSign::plus_ain);
    CHECK(std::abs(p0.s[0][0]) == doctest::Approx(3.0).epsilon(1e-12));
    const auto pm = smatrix(b.bare, b.frame, g, 0.0, IoSign::minus_ain);
    CHECK(std::abs(pm.s[0][0]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(pm.s[1][1]) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("reciprocity at delta = 0 with equal mechanical linewidths") {
    std::mt19937_64 rng(20260810);
    auto bare = fig3a().bare;
    FrameConfig frame = fig3a().frame;
    frame.delta = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        BareParams p = random_bare(rng);
        p.gamma_m2 = p.gamma_m1;
        const auto g = random_couplings(rng, 1e4);
        for (const double w : omega_grid(-5e4, 5e4, 21)) {
            const auto point = smatrix(p, frame, g, w);
            CHECK(std::abs(std::abs(point.s[0][1]) - std::abs(point.s[1][0])) <= 1e-12);
        }
    }
}

TEST_CASE("closed form matches the direct 4-mode solve") {
    std::mt19937_64 rng(424242);
    FrameConfig frame = fig3a().frame;
    std::uniform_real_distribution<double> deltas(-5e3, 5e3);
    for (int trial = 0; trial < 50; ++trial) {
        const BareParams p = random_bare(rng);
        frame.delta = deltas(rng);
        const auto g = random_couplings(rng, 3e4);
        for (const double w : omega_grid(-5e4, 5e4, 41)) {
            const auto closed = smatrix(p, frame, g, w);
            const auto direct = smatrix_direct(p, frame, g, w);
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) {
                    CHECK(std::abs(closed.s[i][j] - direct.s[i][j]) <=
                          1e-10 * std::abs(closed.s[i][j]));
                    CHECK(std::abs(closed.t[i][j] - direct.t[i][j]) <=
                          1e-10 * std::abs(closed.t[i][j]));
                }
            }
        }
    }
}

TEST_CASE("direct solve with zero couplings has no off-diagonals") {
    const auto& b = fig3a();
    const auto p = smatrix_direct(b.bare, b.frame, EffectiveCouplings{}, 1.1e4);
    CHECK(std::abs(p.s[0][1]) == 0.0);
    CHECK(std::abs(p.s[1][0]) == 0.0);
    CHECK(std::abs(p.t[0][0]) == 0.0);
    CHECK(std::abs(p.t[1][1]) == 0.0);
}

TEST_CASE("isolation solve nulls the forward coefficient at omega = 0") {
    const auto& sol = fig3a().solution;
    CHECK(sol.required_v_mag > 0.0);
    CHECK(sol.residual_s12_abs2 <= 1e-10 * std::max(1.0, sol.backward_s21_abs2));
    CHECK(sol.backward_s21_abs2 > 1e6 * sol.residual_s12_abs2);
    CHECK(sol.g_param > 0.0);
}

TEST_CASE("isolation solve: F12 cancellation depth and F21 closed form") {
    const auto& b = fig3a();
    const auto point = smatrix(b.bare, b.frame, b.solution.couplings, 0.0);
    const auto ratio = mechanical_chi(b.bare, b.frame, 1, 0.0) /
                       mechanical_chi(b.bare, b.frame, 2, 0.0);
    const auto iso = isolation_quantities(b.bare, b.solution.drives, b.chi, ratio);
    const double non = b.solution.couplings.nu / b.solution.couplings.mu;
    const double f12_scale = std::abs(iso.s * point.chi_m2) * (std::abs(non) + std::abs(iso.r));
    CHECK(std::abs(point.f12) <= 1e-12 * f12_scale);

    const Complex chi1 = b.chi.chi_1();
    const Complex f21_closed = -std::conj(iso.s) * point.chi_m2 * 2.0 *
                               (non + iso.r.real()) *
                               ((chi1 / std::conj(chi1)) * iso.r + std::conj(iso.r)) /
                               (non + std::conj(iso.r));
    CHECK(std::abs(point.f21 - f21_closed) <= 1e-10 * std::abs(f21_closed));
}

TEST_CASE("isolation solve: phase condition right-hand side is unimodular") {
    // nu/mu is real, so |nu/mu + r*| = |nu/mu + r| by conjugation.
    const auto& b = fig3a();
    const auto ratio = mechanical_chi(b.bare, b.frame, 1, 0.0) /
                       mechanical_chi(b.bare, b.frame, 2, 0.0);
    const auto iso = isolation_quantities(b.bare, b.solution.drives, b.chi, ratio);
    const double non = b.solution.couplings.nu / b.solution.couplings.mu;
    CHECK(std::abs(non + std::conj(iso.r)) ==
          doctest::Approx(std::abs(non + iso.r)).epsilon(1e-12));
}

TEST_CASE("isolation solve: degenerate configuration is rejected") {
    auto cfg = fig3_panel('a');
    cfg.g0_12 = 0.0;
    CHECK_THROWS_AS(build_scenario(cfg), SingularConfigurationError);
}

TEST_CASE("isolation solve: infeasible drive amplitude is reported") {
    // Panel (a) dampings with delta = -4 kHz push nu/mu + 2 Re{r} negative.
    auto cfg = fig3_panel('a');
    cfg.delta = -4.0e3;
    CHECK_THROWS_AS(build_scenario(cfg), NoPhysicalDriveError);
}

TEST_CASE("S-matrix moduli are gauge invariant under drive-phase shifts") {
    const auto& b = fig3a();
    const auto base_point = smatrix(b.bare, b.frame, b.solution.couplings, 2.7e3);
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> phase(-kPi, kPi);
    for (int trial = 0; trial < 20; ++trial) {
        const double a = phase(rng);
        const double c = phase(rng);
        DriveConfig d = b.solution.drives;
        d.phi_11 += a + c;
        d.phi_12 += a;
        d.phi_x += c;
        const auto g = effective_couplings_closed(b.bare, d, b.chi);
        const auto p = smatrix(b.bare, b.frame, g, 2.7e3);
        CHECK(std::abs(std::abs(p.s[0][1]) - std::abs(base_point.s[0][1])) <=
              1e-10 * std::abs(base_point.s[0][1]));
        CHECK(std::abs(std::abs(p.s[1][0]) - std::abs(base_point.s[1][0])) <=
              1e-10 * std::abs(base_point.s[1][0]));
    }
}

TEST_CASE("backward conversion fades continuously as delta -> 0") {
    // Panel (b) dampings keep the solve feasible down to delta = -0.5 kHz.
    double previous = 1e300;
    for (const double delta : {-4.0e3, -2.0e3, -1.0e3, -0.5e3}) {
        auto cfg = fig3_panel('b');
        cfg.delta = delta;
        const auto build = build_scenario(cfg);
        CHECK(build.solution.backward_s21_abs2 < previous);
        previous = build.solution.backward_s21_abs2;
    }
    // An 8x smaller detuning suppresses the backward power by far more than
    // the leading quadratic factor alone would need.
    auto wide = fig3_panel('b');
    auto narrow = fig3_panel('b');
    narrow.delta = -0.5e3;
    CHECK(build_scenario(narrow).solution.backward_s21_abs2 <
          build_scenario(wide).solution.backward_s21_abs2 / 5.0);
}

TEST_CASE("sweep marks singular determinant points instead of dividing") {
    const auto& b = fig3a();
    EffectiveCouplings g{};
    auto bare = b.bare;
    // kappa and gamma_lc cannot vanish through validation; force a singular D
    // by evaluating the closed form with zero decay rates directly.
    bare.kappa = 0.0;
    bare.gamma_lc = 0.0;
    const auto p = smatrix(bare, b.frame, g, 0.0);
    CHECK(p.singular);
}

TEST_CASE("isolation bandwidth around the null") {
    const auto& b = fig3a();
    const auto grid = omega_grid(-5e4, 5e4, 2001);
    const auto sweep = sweep_smatrix(b.bare, b.frame, b.solution.couplings, grid);
    const auto bw = isolation_bandwidth(sweep, 20.0);
    CHECK(bw.peak_isolation_db > 20.0);
    CHECK(bw.bandwidth > 0.0);
    CHECK(bw.bandwidth < 1e5);

    // Reciprocal configuration: 0 dB everywhere, empty bandwidth.
    FrameConfig frame = b.frame;
    frame.delta = 0.0;
    auto bare = b.bare;
    bare.gamma_m2 = bare.gamma_m1;
    std::mt19937_64 rng(99);
    const auto g = random_couplings(rng, 1e4);
    const auto flat = sweep_smatrix(bare, frame, g, grid);
    const auto bw0 = isolation_bandwidth(flat, 20.0);
    CHECK(bw0.bandwidth == 0.0);
    CHECK(bw0.peak_isolation_db == doctest::Approx(0.0).epsilon(1e-9));

    // A grid without omega = 0 is rejected.
    const auto shifted = sweep_smatrix(b.bare, b.frame, b.solution.couplings,
                                       omega_grid(1e3, 2e3, 11));
    CHECK_THROWS_AS(isolation_bandwidth(shifted, 20.0), InvalidParameterError);
}

TEST_CASE("smatrix equivalence sweep stays within 1e-10") {
    // Away from the isolation null: a relative comparison at a nulled S12 is
    // all cancellation noise, so detune the rf phase first.
    const auto& b = fig3a();
    DriveConfig d = b.solution.drives;
    d.phi_x += 0.4;
    const auto g = effective_couplings_closed(b.bare, d, b.chi);
    const auto grid = omega_grid(-5e4, 5e4, 201);
    const auto eq = smatrix_equivalence(b.bare, b.frame, g, grid);
    CHECK(eq.max_rel_deviation <= 1e-10);
    CHECK(eq.singular_points == 0);
}

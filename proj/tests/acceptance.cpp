// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion pins its tolerance in code; timings are reported
// against the stated runtime budgets.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "nonrecip/nonrecip.hpp"

using namespace nonrecip;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

void report(int criterion, bool pass, const std::string& detail, double seconds,
            double budget_seconds) {
    const bool in_budget = seconds <= budget_seconds;
    if (!pass || !in_budget) {
        ++failures;
    }
    std::printf("[%s] criterion %d: %s (%.2fs / budget %.0fs)\n",
                pass && in_budget ? "PASS" : "FAIL", criterion, detail.c_str(), seconds,
                budget_seconds);
    std::fflush(stdout);
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
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
    BareParams p;
    p.g0_11 = 8.0;
    p.g0_12 = 20.0;
    p.g0_21 = 20.0;
    p.g0_22 = 4.0;
    p.kappa = 2e5 + 1e6 * u(rng);
    p.gamma_lc = 2e4 + 1e5 * u(rng);
    p.gamma_m1 = 1e3 + 1e4 * u(rng);
    p.gamma_m2 = 1e3 + 1e4 * u(rng);
    p.omega_1 = 6e6;
    p.omega_2 = 26e6;
    p.omega_lc0 = 6e6;
    p.delta_l = -4e6;
    return p;
}

// 1. Isolation construction at the caption values, panels (a) and (b).
void criterion_1() {
    const Timer timer;
    bool pass = true;
    std::string detail = "isolation construction:";
    for (const char panel : {'a', 'b'}) {
        const auto build = build_scenario(fig3_panel(panel));
        const double s12 = build.solution.residual_s12_abs2;
        const double s21 = build.solution.backward_s21_abs2;
        const bool ok = s12 <= 1e-10 && s21 / std::max(s12, 1e-300) >= 1e6;
        pass = pass && ok;
        detail += std::string(" panel ") + panel + " |S12|^2=" + num(s12) +
                  " |S21|^2=" + num(s21);
    }
    report(1, pass, detail, timer.seconds(), 1.0);
}

// 2. Reciprocity at delta = 0 with equal mechanical linewidths.
void criterion_2() {
    const Timer timer;
    std::mt19937_64 rng(101);
    FrameConfig frame;
    frame.detuning = -4e6;
    frame.omega_lc = 6e6;
    frame.delta = 0.0;
    frame.omega_tilde_1 = 6e6;
    frame.omega_tilde_2 = 26e6;
    const auto grid = omega_grid(-5e4, 5e4, 101);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        BareParams p = random_bare(rng);
        p.gamma_m2 = p.gamma_m1;
        const auto g = random_couplings(rng, 3e4);
        for (const double w : grid) {
            const auto point = smatrix(p, frame, g, w);
            worst = std::max(worst,
                             std::abs(std::abs(point.s[0][1]) - std::abs(point.s[1][0])));
        }
    }
    report(2, worst <= 1e-12, "reciprocity max ||S12|-|S21|| = " + num(worst),
           timer.seconds(), 10.0);
}

// 3. Closed form vs direct 4-mode solve over 2001-point sweeps.
void criterion_3() {
    const Timer timer;
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> deltas(-5e3, 5e3);
    const auto grid = omega_grid(-5e4, 5e4, 2001);
    double worst = 0.0;
    int singular = 0;
    for (int trial = 0; trial < 100; ++trial) {
        BareParams p = random_bare(rng);
        FrameConfig frame;
        frame.detuning = -4e6;
        frame.omega_lc = 6e6;
        frame.delta = deltas(rng);
        frame.omega_tilde_1 = 6e6;
        frame.omega_tilde_2 = 26e6;
        const auto g = random_couplings(rng, 3e4);
        const auto eq = smatrix_equivalence(p, frame, g, grid);
        worst = std::max(worst, eq.max_rel_deviation);
        singular += eq.singular_points;
    }
    report(3, worst <= 1e-10 && singular == 0,
           "closed vs direct max rel dev = " + num(worst), timer.seconds(), 60.0);
}

// 4. Perturbation-theory oracle at Fig. 3(a), drive-shifted mode.
void criterion_4() {
    const Timer timer;
    const auto build = build_scenario(fig3_panel('a'));
    VerifySettings settings;
    settings.mode = ChiMode::drive_shifted;
    settings.drive_scale = 1.0;
    settings.run_half_scale = true;
    settings.integrator.tol = 1e-8;
    settings.integrator.t_end = 5e-3;
    const auto cmp = verify_expansion(build.bare, build.solution.drives, settings);
    const bool five_percent = cmp.worst_rel_err <= 0.05;
    const bool scaling = cmp.scaling_ratio >= 0.3 && cmp.scaling_ratio <= 0.7;
    std::string detail = "oracle worst rel err = " + num(cmp.worst_rel_err) +
                         " (5% bound), scaling ratio = " + num(cmp.scaling_ratio) +
                         " ([0.3, 0.7])";
    report(4, five_percent && scaling, detail, timer.seconds(), 600.0);
}

// 5. RWA audit passes both panels at margin 0.1 with the delta bound.
void criterion_5() {
    const Timer timer;
    bool pass = true;
    std::string detail = "rwa audit:";
    for (const char panel : {'a', 'b'}) {
        auto scenario = fig3_panel(panel);
        scenario.rwa_margin = 0.1;
        const auto build = build_scenario(scenario);
        pass = pass && build.audit.pass && build.audit.delta_ratio <= 1.0;
        detail += std::string(" panel ") + panel + " worst=" + num(build.audit.worst_ratio) +
                  " delta_ratio=" + num(build.audit.delta_ratio);
    }
    report(5, pass, detail, timer.seconds(), 5.0);
}

// 6. Assembled vs closed-form couplings.
void criterion_6() {
    const Timer timer;
    const auto build = build_scenario(fig3_panel('a'));
    const auto harmonics = perturbative_harmonics(build.bare, build.drives, build.chi);
    const auto assembled = effective_couplings_assembled(harmonics, build.bare);
    const auto& closed = build.solution.couplings;
    const double dev12 = std::abs(closed.g12 - assembled.g12) / std::abs(closed.g12);
    const double dev21 = std::abs(closed.g21 - assembled.g21) / std::abs(closed.g21);
    // The static coefficients carry the second-order corrections dropped by
    // the closed g11/g22; the measured correction ratios bound the deviation.
    const auto coeffs = coefficient_catalog(harmonics, build.bare, build.frame);
    const double bound11 = std::abs(harmonics.at({FieldMode::a1, 2, 1, 0})) /
                           std::abs(harmonics.at({FieldMode::a1, 0, 1, 0}));
    const double bound22 = std::abs(harmonics.at({FieldMode::a2, 2, 0, 1}) +
                                    std::conj(harmonics.at({FieldMode::a2, 2, 0, -1}))) /
                           std::abs(harmonics.at({FieldMode::a2, 0, 0, 1}));
    const double dev11 = std::abs(coeffs.static_g11 - closed.g11) / std::abs(closed.g11);
    const double dev22 = std::abs(coeffs.static_g22 - closed.g22) / std::abs(closed.g22);
    const bool pass = dev12 <= 1e-9 && dev21 <= 1e-9 &&
                      dev11 <= bound11 * (1.0 + 1e-9) && dev22 <= bound22 * (1.0 + 1e-9);
    report(6, pass,
           "couplings: dev12=" + num(dev12) + " dev21=" + num(dev21) + " dev11=" +
               num(dev11) + "<=" + num(bound11) + " dev22=" + num(dev22) + "<=" +
               num(bound22),
           timer.seconds(), 1.0);
}

// 7. Phase-gauge invariance of |S12|, |S21| across 20 random gauges.
void criterion_7() {
    const Timer timer;
    const auto build = build_scenario(fig3_panel('a'));
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> phase(-kPi, kPi);
    const auto grid = omega_grid(-5e4, 5e4, 201);
    const auto base = sweep_smatrix(build.bare, build.frame, build.solution.couplings, grid);
    double worst = 0.0;
    for (int gauge = 0; gauge < 20; ++gauge) {
        const double a = phase(rng);
        const double b = phase(rng);
        DriveConfig d = build.solution.drives;
        d.phi_11 += a + b;
        d.phi_12 += a;
        d.phi_x += b;
        const auto g = effective_couplings_closed(build.bare, d, build.chi);
        const auto shifted = sweep_smatrix(build.bare, build.frame, g, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double s12 = std::abs(base.points[i].s[0][1]);
            const double s21 = std::abs(base.points[i].s[1][0]);
            worst = std::max(worst, std::abs(std::abs(shifted.points[i].s[0][1]) - s12) /
                                        std::max(s12, 1e-300));
            worst = std::max(worst, std::abs(std::abs(shifted.points[i].s[1][0]) - s21) /
                                        std::max(s21, 1e-300));
        }
    }
    report(7, worst <= 1e-10, "gauge invariance worst rel dev = " + num(worst),
           timer.seconds(), 60.0);
}

// 8. Optimizer regression against an exhaustive 101x101 grid.
void criterion_8() {
    const Timer timer;
    auto base = fig3_panel('a');
    base.delta = -1.0e3;    // perturbed start
    base.gamma_lc = 5.0e4;
    const std::vector<FreeVar> vars = {FreeVar::delta, FreeVar::gamma_lc};
    const std::vector<Bounds> bounds = {{-8e3, -2e2}, {3e4, 1.6e5}};

    double grid_max = 0.0;
    for (int i = 0; i < 101; ++i) {
        for (int j = 0; j < 101; ++j) {
            const double d = bounds[0].lo + (bounds[0].hi - bounds[0].lo) * i / 100.0;
            const double g = bounds[1].lo + (bounds[1].hi - bounds[1].lo) * j / 100.0;
            grid_max = std::max(grid_max, objective_eval(vars, {d, g}, base).objective);
        }
    }
    OptimizerSettings settings;
    settings.budget = 1500;
    const auto rep = maximize_backward(base, vars, bounds, settings);
    const bool pass = rep.success && rep.best_objective >= 0.95 * grid_max;
    report(8, pass,
           "optimizer best = " + num(rep.best_objective) + " vs grid oracle " +
               num(grid_max),
           timer.seconds(), 300.0);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}

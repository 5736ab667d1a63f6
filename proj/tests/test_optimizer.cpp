#include <doctest.h>

#include <cmath>

#include "nonrecip/errors.hpp"
#include "nonrecip/optimizer.hpp"

using namespace nonrecip;

TEST_CASE("objective at the Fig. 3(a) point is positive with a passing audit") {
    const auto base = fig3_panel('a');
    const auto r = objective_eval({FreeVar::delta, FreeVar::gamma_lc},
                                  {base.delta, base.gamma_lc}, base);
    CHECK(r.feasible);
    CHECK(r.rwa_pass);
    CHECK(r.objective > 0.0);
}

TEST_CASE("objective vanishes with reason at infeasible points") {
    const auto base = fig3_panel('a');
    // Panel (a) dampings at delta = -4 kHz have no physical drive amplitude.
    const auto r = objective_eval({FreeVar::delta}, {-4.0e3}, base);
    CHECK_FALSE(r.feasible);
    CHECK(r.objective == 0.0);
    CHECK(r.note.find("infeasible") != std::string::npos);
}

TEST_CASE("objective is gated by the audit") {
    auto base = fig3_panel('a');
    base.rwa_margin = 1e-4;  // impossible margin: every point fails the audit
    const auto r = objective_eval({FreeVar::delta}, {base.delta}, base);
    CHECK(r.feasible);
    CHECK_FALSE(r.rwa_pass);
    CHECK(r.objective == 0.0);
    CHECK(r.note.find("rwa violated") != std::string::npos);
}

TEST_CASE("delta = 0 point scores zero by reciprocity") {
    // With S12 nulled and delta = 0, the backward coefficient vanishes too;
    // the tiny residual is numerical noise around the exact zero.
    const auto base = fig3_panel('a');
    const auto r = objective_eval({FreeVar::delta}, {0.0}, base);
    const auto ref = objective_eval({FreeVar::delta}, {base.delta}, base);
    CHECK(r.objective <= 1e-12 * ref.objective);
}

TEST_CASE("budget of one evaluates only the base point") {
    const auto base = fig3_panel('a');
    OptimizerSettings settings;
    settings.budget = 1;
    const auto report = maximize_backward(base, {FreeVar::delta},
                                          {Bounds{-8e3, -2e2}}, settings);
    CHECK(report.evaluations == 1);
    CHECK(report.trace.size() == 1);
    CHECK(report.trace.front().phase == "base");
    CHECK(report.best_point.size() == 1);
    CHECK(report.best_point[0] == doctest::Approx(base.delta));
}

TEST_CASE("one-dimensional refinement does not fall below the caption point") {
    const auto base = fig3_panel('a');
    const auto at_caption = objective_eval({FreeVar::delta}, {base.delta}, base);
    OptimizerSettings settings;
    settings.budget = 400;
    const auto report = maximize_backward(base, {FreeVar::delta},
                                          {Bounds{-10e3, -1e2}}, settings);
    CHECK(report.success);
    CHECK(report.best_objective >= at_caption.objective - 1e-12);
}

TEST_CASE("two-dimensional run from a perturbed start recovers the objective") {
    auto base = fig3_panel('a');
    base.delta = -1.0e3;
    base.gamma_lc = 5.0e4;
    const auto fig3a_objective =
        objective_eval({FreeVar::delta, FreeVar::gamma_lc}, {-2.6e3, 7.88e4},
                       fig3_panel('a'));
    OptimizerSettings settings;
    settings.budget = 1200;
    const auto report = maximize_backward(
        base, {FreeVar::delta, FreeVar::gamma_lc},
        {Bounds{-8e3, -2e2}, Bounds{3e4, 1.6e5}}, settings);
    CHECK(report.success);
    CHECK(report.best_objective >= 0.95 * fig3a_objective.objective);
}

TEST_CASE("trace bookkeeping: monotone best, fresh re-evaluation, audit soundness") {
    auto base = fig3_panel('a');
    base.delta = -1.0e3;
    OptimizerSettings settings;
    settings.budget = 300;
    const auto report = maximize_backward(base, {FreeVar::delta, FreeVar::gamma_lc},
                                          {Bounds{-8e3, -2e2}, Bounds{3e4, 1.6e5}},
                                          settings);
    REQUIRE(report.success);

    double best = -1.0;
    for (const auto& tp : report.trace) {
        if (tp.feasible && tp.rwa_pass) {
            best = std::max(best, tp.objective);
        }
        // No failing point may carry a positive score.
        if (!tp.rwa_pass) {
            CHECK(tp.objective == 0.0);
        }
    }
    CHECK(report.best_objective == doctest::Approx(best));

    // The reported best point re-evaluates through a fresh pipeline.
    const auto fresh = objective_eval(report.vars, report.best_point, base);
    CHECK(fresh.rwa_pass);
    CHECK(fresh.objective ==
          doctest::Approx(report.best_objective).epsilon(1e-12));
}

TEST_CASE("all-infeasible box yields a failed report, not an exception") {
    const auto base = fig3_panel('a');
    OptimizerSettings settings;
    settings.budget = 80;
    settings.grid_points_per_axis = 8;
    const auto report =
        maximize_backward(base, {FreeVar::delta}, {Bounds{-6e3, -3.5e3}}, settings);
    CHECK_FALSE(report.success);
    CHECK(report.best_point.empty());
    CHECK(!report.message.empty());
}

TEST_CASE("optimizer argument validation") {
    const auto base = fig3_panel('a');
    CHECK_THROWS_AS(maximize_backward(base, {}, {}, {}), InvalidParameterError);
    CHECK_THROWS_AS(
        maximize_backward(base, {FreeVar::delta}, {Bounds{1.0, -1.0}}, {}),
        InvalidParameterError);
    OptimizerSettings zero;
    zero.budget = 0;
    CHECK_THROWS_AS(
        maximize_backward(base, {FreeVar::delta}, {Bounds{-8e3, -2e2}}, zero),
        InvalidParameterError);
}

TEST_CASE("free variable names parse case-insensitively") {
    CHECK(parse_free_var("delta") == FreeVar::delta);
    CHECK(parse_free_var("gamma_LC") == FreeVar::gamma_lc);
    CHECK(parse_free_var("E1") == FreeVar::e1);
    CHECK_THROWS_AS(parse_free_var("omega_1"), InvalidParameterError);
}

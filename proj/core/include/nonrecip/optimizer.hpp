#pragma once

#include <string>
#include <vector>

#include "nonrecip/scenario.hpp"

namespace nonrecip {

enum class FreeVar { delta, gamma_lc, gamma_m1, gamma_m2, kappa, e1, e2 };

std::string to_string(FreeVar var);
/// Accepts the snake_case names above (case-insensitive). Throws
/// InvalidParameterError for anything else.
FreeVar parse_free_var(const std::string& name);

struct Bounds {
    double lo = 0.0;
    double hi = 0.0;
};

struct ObjectiveResult {
    double objective = 0.0;  // |S21(0)|^2, or 0 when gated
    bool feasible = false;   // isolation solve succeeded
    bool rwa_pass = false;
    std::string note;  // infeasibility tag or worst audit offender
};

/// Applies the point to the scenario, rebuilds the full pipeline and scores
/// |S21(0)|^2; the objective is 0 when the isolation solve is infeasible or
/// the audit fails at the scenario margin.
ObjectiveResult objective_eval(const std::vector<FreeVar>& vars,
                               const std::vector<double>& point,
                               const ScenarioConfig& base);

struct TracePoint {
    std::vector<double> x;
    double objective = 0.0;
    bool rwa_pass = false;
    bool feasible = false;
    std::string phase;  // "base", "grid" or "simplex"
};

struct OptimizationReport {
    std::vector<FreeVar> vars;
    std::vector<double> best_point;
    double best_objective = 0.0;
    std::vector<TracePoint> trace;
    long evaluations = 0;
    bool success = false;  // at least one feasible point found
    std::string message;
};

struct OptimizerSettings {
    long budget = 2000;          // total objective evaluations
    int grid_points_per_axis = 25;
    double simplex_tol = 1e-10;  // relative objective spread stop
};

/// Coarse grid scan followed by Nelder-Mead refinement from the best grid
/// point, all within bounds. Deterministic; infeasible points score 0.
OptimizationReport maximize_backward(const ScenarioConfig& base,
                                     const std::vector<FreeVar>& vars,
                                     const std::vector<Bounds>& bounds,
                                     const OptimizerSettings& settings = {});

}  // namespace nonrecip

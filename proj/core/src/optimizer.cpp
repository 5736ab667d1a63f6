#include "nonrecip/optimizer.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "nonrecip/errors.hpp"

namespace nonrecip {

std::string to_string(FreeVar var) {
    switch (var) {
        case FreeVar::delta: return "delta";
        case FreeVar::gamma_lc: return "gamma_lc";
        case FreeVar::gamma_m1: return "gamma_m1";
        case FreeVar::gamma_m2: return "gamma_m2";
        case FreeVar::kappa: return "kappa";
        case FreeVar::e1: return "e1";
        case FreeVar::e2: return "e2";
    }
    return "?";
}

FreeVar parse_free_var(const std::string& name) {
    std::string lower;
    lower.reserve(name.size());
    for (const char c : name) {
        lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    for (const FreeVar v : {FreeVar::delta, FreeVar::gamma_lc, FreeVar::gamma_m1,
                            FreeVar::gamma_m2, FreeVar::kappa, FreeVar::e1, FreeVar::e2}) {
        if (lower == to_string(v)) {
            return v;
        }
    }
    throw InvalidParameterError("unknown free variable '" + name + "'");
}

namespace {

ScenarioConfig apply_point(const ScenarioConfig& base, const std::vector<FreeVar>& vars,
                           const std::vector<double>& point) {
    ScenarioConfig c = base;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        switch (vars[i]) {
            case FreeVar::delta: c.delta = point[i]; break;
            case FreeVar::gamma_lc: c.gamma_lc = point[i]; break;
            case FreeVar::gamma_m1: c.gamma_m1 = point[i]; break;
            case FreeVar::gamma_m2: c.gamma_m2 = point[i]; break;
            case FreeVar::kappa: c.kappa = point[i]; break;
            case FreeVar::e1: c.e1 = point[i]; break;
            case FreeVar::e2: c.e2 = point[i]; break;
        }
    }
    return c;
}

}  // namespace

ObjectiveResult objective_eval(const std::vector<FreeVar>& vars,
                               const std::vector<double>& point,
                               const ScenarioConfig& base) {
    if (vars.size() != point.size()) {
        throw InvalidParameterError("free-variable list and point size mismatch");
    }
    ObjectiveResult out;
    try {
        const auto build = build_scenario(apply_point(base, vars, point));
        out.feasible = true;
        out.rwa_pass = build.audit.pass;
        if (build.audit.pass) {
            out.objective = build.solution.backward_s21_abs2;
        } else {
            out.objective = 0.0;
            out.note = "rwa violated: " + build.audit.worst_name;
        }
    } catch (const NoPhysicalDriveError& e) {
        out.note = std::string("infeasible: ") + e.what();
    } catch (const SingularConfigurationError& e) {
        out.note = std::string("singular: ") + e.what();
    } catch (const InvalidParameterError& e) {
        out.note = std::string("invalid: ") + e.what();
    }
    return out;
}

OptimizationReport maximize_backward(const ScenarioConfig& base,
                                     const std::vector<FreeVar>& vars,
                                     const std::vector<Bounds>& bounds,
                                     const OptimizerSettings& settings) {
    const std::size_t dim = vars.size();
    if (dim == 0 || bounds.size() != dim) {
        throw InvalidParameterError("need a nonempty free-variable list with matching bounds");
    }
    for (const auto& b : bounds) {
        if (!(b.hi > b.lo) || !std::isfinite(b.lo) || !std::isfinite(b.hi)) {
            throw InvalidParameterError("bounds must be finite with hi > lo");
        }
    }
    if (settings.budget < 1) {
        throw InvalidParameterError("budget must be at least 1");
    }

    OptimizationReport report;
    report.vars = vars;
    long remaining = settings.budget;

    const auto clamp_point = [&](std::vector<double> x) {
        for (std::size_t i = 0; i < dim; ++i) {
            x[i] = std::clamp(x[i], bounds[i].lo, bounds[i].hi);
        }
        return x;
    };

    const auto evaluate = [&](const std::vector<double>& x, const char* phase) {
        const auto r = objective_eval(vars, x, base);
        ++report.evaluations;
        --remaining;
        TracePoint tp;
        tp.x = x;
        tp.objective = r.objective;
        tp.rwa_pass = r.rwa_pass;
        tp.feasible = r.feasible;
        tp.phase = phase;
        report.trace.push_back(std::move(tp));
        if (r.feasible && r.rwa_pass &&
            (report.best_point.empty() || r.objective > report.best_objective)) {
            report.best_objective = r.objective;
            report.best_point = x;
            report.success = true;
        }
        return r.objective;
    };

    // Base point: the scenario's own values for the free variables.
    std::vector<double> start(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        switch (vars[i]) {
            case FreeVar::delta: start[i] = base.delta; break;
            case FreeVar::gamma_lc: start[i] = base.gamma_lc; break;
            case FreeVar::gamma_m1: start[i] = base.gamma_m1; break;
            case FreeVar::gamma_m2: start[i] = base.gamma_m2; break;
            case FreeVar::kappa: start[i] = base.kappa; break;
            case FreeVar::e1: start[i] = base.e1; break;
            case FreeVar::e2: start[i] = base.e2; break;
        }
    }
    start = clamp_point(start);
    evaluate(start, "base");

    // Coarse grid scan.
    const int per_axis = std::max(settings.grid_points_per_axis, 2);
    std::vector<double> best_grid = start;
    double best_grid_value = report.best_objective;
    long cells = 1;
    for (std::size_t i = 0; i < dim; ++i) {
        cells *= per_axis;
    }
    for (long cell = 0; cell < cells && remaining > 0; ++cell) {
        long rest = cell;
        std::vector<double> x(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            const int k = static_cast<int>(rest % per_axis);
            rest /= per_axis;
            x[i] = bounds[i].lo + (bounds[i].hi - bounds[i].lo) * k / (per_axis - 1);
        }
        const double v = evaluate(x, "grid");
        if (v > best_grid_value) {
            best_grid_value = v;
            best_grid = x;
        }
    }

    // Nelder-Mead refinement from the best grid point, clamped to bounds.
    if (remaining > 0) {
        const std::size_t m = dim + 1;
        std::vector<std::vector<double>> simplex(m, best_grid);
        std::vector<double> value(m);
        for (std::size_t i = 0; i < dim && remaining > 0; ++i) {
            double step = 0.05 * (bounds[i].hi - bounds[i].lo);
            if (simplex[i + 1][i] + step > bounds[i].hi) {
                step = -step;
            }
            simplex[i + 1][i] += step;
        }
        for (std::size_t i = 0; i < m && remaining > 0; ++i) {
            value[i] = evaluate(clamp_point(simplex[i]), "simplex");
        }

        const auto order = [&]() {
            std::vector<std::size_t> idx(m);
            for (std::size_t i = 0; i < m; ++i) {
                idx[i] = i;
            }
            std::sort(idx.begin(), idx.end(),
                      [&](std::size_t a, std::size_t b) { return value[a] > value[b]; });
            std::vector<std::vector<double>> sx(m);
            std::vector<double> sv(m);
            for (std::size_t i = 0; i < m; ++i) {
                sx[i] = simplex[idx[i]];
                sv[i] = value[idx[i]];
            }
            simplex = std::move(sx);
            value = std::move(sv);
        };

        order();
        while (remaining > 0) {
            const double spread =
                std::abs(value.front() - value.back()) /
                std::max(std::abs(value.front()), 1e-300);
            if (value.front() > 0.0 && spread < settings.simplex_tol) {
                break;
            }
            std::vector<double> centroid(dim, 0.0);
            for (std::size_t i = 0; i + 1 < m; ++i) {
                for (std::size_t k = 0; k < dim; ++k) {
                    centroid[k] += simplex[i][k] / static_cast<double>(dim);
                }
            }
            const auto blend = [&](double c) {
                std::vector<double> x(dim);
                for (std::size_t k = 0; k < dim; ++k) {
                    x[k] = centroid[k] + c * (centroid[k] - simplex.back()[k]);
                }
                return clamp_point(x);
            };

            const auto reflected = blend(1.0);
            const double vr = evaluate(reflected, "simplex");
            if (vr > value.front() && remaining > 0) {
                const auto expanded = blend(2.0);
                const double ve = evaluate(expanded, "simplex");
                if (ve > vr) {
                    simplex.back() = expanded;
                    value.back() = ve;
                } else {
                    simplex.back() = reflected;
                    value.back() = vr;
                }
            } else if (vr > value[m - 2]) {
                simplex.back() = reflected;
                value.back() = vr;
            } else if (remaining > 0) {
                const auto contracted = blend(-0.5);
                const double vc = evaluate(contracted, "simplex");
                if (vc > value.back()) {
                    simplex.back() = contracted;
                    value.back() = vc;
                } else {
                    for (std::size_t i = 1; i < m && remaining > 0; ++i) {
                        for (std::size_t k = 0; k < dim; ++k) {
                            simplex[i][k] = 0.5 * (simplex[i][k] + simplex.front()[k]);
                        }
                        value[i] = evaluate(clamp_point(simplex[i]), "simplex");
                    }
                }
            }
            order();
        }
    }

    if (!report.success) {
        report.message = "no feasible point found within the budget";
    }
    return report;
}

}  // namespace nonrecip

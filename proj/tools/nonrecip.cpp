// Command-line front end: config ingestion, subcommand dispatch and CSV/JSON
// emission for the nonreciprocal rf-optical converter pipeline.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <json.hpp>

#include "nonrecip/nonrecip.hpp"

namespace {

using nlohmann::json;
using namespace nonrecip;

constexpr const char* kCsvHeader =
    "omega_rad_s, abs2_S11, abs2_S12, abs2_S21, abs2_S22, arg_S12_rad, arg_S21_rad, "
    "abs2_T11, abs2_T12, abs2_T21, abs2_T22";

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json complex_json(const Complex& z) {
    return json{{"re", z.real()}, {"im", z.imag()}};
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") {
        return std::cout;
    }
    file.open(path, std::ios::trunc);
    if (!file) {
        throw Error("cannot open output file: " + path);
    }
    return file;
}

void emit(const json& doc, const std::string& path) {
    std::ofstream file;
    auto& out = open_output(file, path);
    out << doc.dump(2) << "\n";
}

void write_sweep_csv(std::ostream& out, const ScatteringResult& sweep) {
    out << kCsvHeader << "\n";
    for (std::size_t i = 0; i < sweep.omega_grid.size(); ++i) {
        const auto& p = sweep.points[i];
        out << fmt(sweep.omega_grid[i]);
        out << ", " << fmt(std::norm(p.s[0][0])) << ", " << fmt(std::norm(p.s[0][1]))
            << ", " << fmt(std::norm(p.s[1][0])) << ", " << fmt(std::norm(p.s[1][1]));
        out << ", " << fmt(std::arg(p.s[0][1])) << ", " << fmt(std::arg(p.s[1][0]));
        out << ", " << fmt(std::norm(p.t[0][0])) << ", " << fmt(std::norm(p.t[0][1]))
            << ", " << fmt(std::norm(p.t[1][0])) << ", " << fmt(std::norm(p.t[1][1]));
        out << "\n";
    }
}

json frame_json(const RunConfig& cfg) {
    const auto& r = cfg.resolution;
    return json{{"delta_l", r.delta_l},
                {"omega_lc0", r.omega_lc0},
                {"target_detuning", cfg.frame.detuning},
                {"target_omega_lc", cfg.frame.omega_lc},
                {"delta", cfg.frame.delta},
                {"omega_tilde_1", r.frame.omega_tilde_1},
                {"omega_tilde_2", r.frame.omega_tilde_2},
                {"iterations", r.iterations},
                {"residual_detuning", r.residual_detuning},
                {"residual_omega_lc", r.residual_omega_lc},
                {"shift_detuning", r.shift_detuning},
                {"shift_omega_lc", r.shift_omega_lc},
                {"strained", r.strained}};
}

json couplings_json(const EffectiveCouplings& g) {
    return json{{"source", g.source == CouplingSource::closed_form ? "closed-form" : "assembled"},
                {"g11", complex_json(g.g11)},
                {"g12", complex_json(g.g12)},
                {"g21", complex_json(g.g21)},
                {"g22", complex_json(g.g22)},
                {"mu", g.mu},
                {"nu", g.nu}};
}

json solution_json(const NonrecipSolution& sol) {
    return json{{"required_phase", sol.required_phase},
                {"required_v_mag", sol.required_v_mag},
                {"phi_11", sol.phi_11},
                {"phi_12", sol.phi_12},
                {"phi_x", sol.phi_x},
                {"g_param", sol.g_param},
                {"residual_s12_abs2", sol.residual_s12_abs2},
                {"backward_s21_abs2", sol.backward_s21_abs2},
                {"f21_at_zero", complex_json(sol.f21_at_zero)}};
}

json audit_json(const AuditReport& report) {
    json entries = json::array();
    for (const auto& row : report.ratios) {
        entries.push_back(
            {{"name", row.name}, {"ratio", row.ratio}, {"frequency", row.frequency}});
    }
    return json{{"entries", std::move(entries)},
                {"worst_ratio", report.worst_ratio},
                {"worst_name", report.worst_name},
                {"kappa_ratio", report.kappa_ratio},
                {"gamma_lc_ratio", report.gamma_lc_ratio},
                {"gamma_m_ratio", report.gamma_m_ratio},
                {"min_frequency", report.min_frequency},
                {"delta_ratio", report.delta_ratio},
                {"margin", report.margin},
                {"pass", report.pass},
                {"strict_worst_ratio", report.strict_worst_ratio},
                {"strict_pass", report.strict_pass}};
}

ChiMode parse_mode(const std::string& text) {
    if (text == "paper-literal") {
        return ChiMode::paper_literal;
    }
    if (text == "drive-shifted") {
        return ChiMode::drive_shifted;
    }
    throw CLI::ValidationError("--mode", "expected paper-literal or drive-shifted");
}

struct GlobalOptions {
    std::string config_path;
    std::string io_sign = "plus";

    RunConfig load() const {
        std::string path = config_path;
        if (path.empty()) {
            if (const char* env = std::getenv("NONRECIP_CONFIG")) {
                path = env;
            }
        }
        if (path.empty()) {
            throw ConfigError("no config file given (use --config or NONRECIP_CONFIG)");
        }
        return load_config(path);
    }

    IoSign io() const {
        return io_sign == "minus" ? IoSign::minus_ain : IoSign::plus_ain;
    }
};

// Rebuilds the full pipeline (frame, isolation solve, audit) from a parsed
// config, leaving the config's own drive amplitudes untouched.
ScenarioBuild build_from(const RunConfig& cfg, IoSign io) {
    ScenarioConfig s = cfg.scenario;
    s.io = io;
    return build_scenario(s);
}

int run_cli(int argc, char** argv) {
    CLI::App app{"nonreciprocal rf-optical conversion designer"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    GlobalOptions global;
    app.add_option("-c,--config", global.config_path,
                   "config file (default: $NONRECIP_CONFIG)");

    // frame
    auto* cmd_frame = app.add_subcommand("frame", "resolve the bare frame from the targets");
    std::string frame_out;
    cmd_frame->add_option("-o,--output", frame_out, "output JSON path (default stdout)");

    // harmonics
    auto* cmd_harm =
        app.add_subcommand("harmonics", "dump the perturbative harmonic catalog as JSON");
    cmd_harm->alias("dump-harmonics");
    std::string harm_out;
    std::string harm_mode = "paper-literal";
    cmd_harm->add_option("-o,--output", harm_out, "output JSON path (default stdout)");
    cmd_harm->add_option("--mode", harm_mode, "susceptibility convention")
        ->check(CLI::IsMember({"paper-literal", "drive-shifted"}));

    // couplings
    auto* cmd_coup = app.add_subcommand("couplings",
                                        "effective couplings, mu/nu and isolation quantities");
    std::string coup_out;
    cmd_coup->add_option("-o,--output", coup_out, "output JSON path (default stdout)");

    // rwa-audit
    auto* cmd_audit = app.add_subcommand("rwa-audit", "certify the rotating-wave reduction");
    std::string audit_out;
    double audit_margin = 0.1;
    cmd_audit->add_option("-o,--output", audit_out, "output JSON path (default stdout)");
    cmd_audit->add_option("--margin", audit_margin, "ratio quantifying 'much smaller than'");

    // smatrix
    auto* cmd_smatrix = app.add_subcommand("smatrix", "sweep S(omega), T(omega) to CSV");
    std::string smatrix_out;
    bool smatrix_direct_route = false;
    bool smatrix_use_config_drives = false;
    cmd_smatrix->add_option("-o,--output", smatrix_out, "output CSV path (default stdout)");
    cmd_smatrix->add_flag("--direct", smatrix_direct_route,
                          "solve the 4-mode system numerically instead of the closed form");
    cmd_smatrix->add_flag("--config-drives", smatrix_use_config_drives,
                          "use the [drives] rf amplitude instead of re-solving isolation");
    cmd_smatrix->add_option("--io-sign", global.io_sign, "input-output sign convention")
        ->check(CLI::IsMember({"plus", "minus"}));

    // isolate
    auto* cmd_isolate =
        app.add_subcommand("isolate", "solve the isolation conditions for |V'| and phi_X");
    std::string isolate_out;
    std::string isolate_write;
    double isolate_omega = 0.0;
    cmd_isolate->add_option("-o,--output", isolate_out, "output JSON path (default stdout)");
    cmd_isolate->add_option("--write-config", isolate_write,
                            "rewrite the config with the solved drive section");
    cmd_isolate->add_option("--omega", isolate_omega, "evaluation frequency (rad/s)");

    // optimize
    auto* cmd_opt = app.add_subcommand("optimize", "maximize |S21(0)|^2 over free parameters");
    std::string opt_out;
    std::string opt_trace;
    std::vector<std::string> opt_free;
    std::vector<std::string> opt_bounds;
    long opt_budget = 2000;
    int opt_grid = 25;
    cmd_opt->add_option("--free", opt_free, "free variables (comma separated)")
        ->required()
        ->delimiter(',');
    cmd_opt
        ->add_option("--bounds", opt_bounds,
                     "bounds per variable as name=lo:hi (comma separated)")
        ->required()
        ->delimiter(',');
    cmd_opt->add_option("--budget", opt_budget, "objective evaluation budget");
    cmd_opt->add_option("--grid", opt_grid, "coarse grid points per axis");
    cmd_opt->add_option("-o,--output", opt_out, "report JSON path (default stdout)");
    cmd_opt->add_option("--trace", opt_trace, "trace CSV path");

    // oracle
    auto* cmd_oracle =
        app.add_subcommand("oracle", "verify the expansion against the time-domain integration");
    std::string oracle_out;
    std::string oracle_csv;
    std::string oracle_mode;
    double oracle_scale = 0.0;
    cmd_oracle->add_option("-o,--output", oracle_out, "comparison JSON path (default stdout)");
    cmd_oracle->add_option("--csv", oracle_csv, "per-key error CSV path");
    cmd_oracle->add_option("--mode", oracle_mode, "susceptibility convention for the catalog")
        ->check(CLI::IsMember({"paper-literal", "drive-shifted"}));
    cmd_oracle->add_option("--drive-scale", oracle_scale, "overall drive scale factor");

    // reproduce-fig3
    auto* cmd_fig3 = app.add_subcommand("reproduce-fig3",
                                        "run the embedded caption presets end to end");
    std::string fig3_panel_name = "a";
    std::string fig3_out;
    cmd_fig3->add_option("--panel", fig3_panel_name, "panel preset")
        ->check(CLI::IsMember({"a", "b"}));
    cmd_fig3->add_option("-o,--output", fig3_out, "output CSV path (default fig3<panel>.csv)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_frame->parsed()) {
            const auto cfg = global.load();
            emit(frame_json(cfg), frame_out);
        } else if (cmd_harm->parsed()) {
            const auto cfg = global.load();
            const auto chi = susceptibilities(cfg.bare, cfg.frame, parse_mode(harm_mode));
            const auto catalog = perturbative_harmonics(cfg.bare, cfg.drives(), chi);
            json entries = json::array();
            for (const auto& [key, amp] : catalog.entries) {
                entries.push_back({{"mode", to_string(key.mode)},
                                   {"order", key.order},
                                   {"n_plus", key.n_plus},
                                   {"n_X", key.n_x},
                                   {"re", amp.real()},
                                   {"im", amp.imag()},
                                   {"symbol", symbol(key)}});
            }
            emit(json{{"mode", harm_mode},
                      {"omega_plus", catalog.omega_plus},
                      {"omega_x", catalog.omega_x},
                      {"entries", std::move(entries)}},
                 harm_out);
        } else if (cmd_coup->parsed()) {
            const auto cfg = global.load();
            const auto build = build_from(cfg, global.io());
            const auto catalog =
                perturbative_harmonics(build.bare, build.drives, build.chi);
            const auto assembled = effective_couplings_assembled(catalog, build.bare);
            const auto ratio = mechanical_chi(build.bare, build.frame, 1, 0.0) /
                               mechanical_chi(build.bare, build.frame, 2, 0.0);
            const auto iso =
                isolation_quantities(build.bare, build.drives, build.chi, ratio);
            emit(json{{"closed_form", couplings_json(build.solution.couplings)},
                      {"assembled", couplings_json(assembled)},
                      {"r", complex_json(iso.r)},
                      {"s", complex_json(iso.s)},
                      {"g_param", iso.g_param},
                      {"varphi", iso.varphi}},
                 coup_out);
        } else if (cmd_audit->parsed()) {
            const auto cfg = global.load();
            auto scenario = cfg.scenario;
            scenario.rwa_margin = audit_margin;
            scenario.io = global.io();
            const auto build = build_scenario(scenario);
            emit(audit_json(build.audit), audit_out);
        } else if (cmd_smatrix->parsed()) {
            const auto cfg = global.load();
            const auto grid =
                omega_grid(cfg.sweep.omega_min, cfg.sweep.omega_max, cfg.sweep.points);
            ScatteringResult sweep;
            if (smatrix_use_config_drives) {
                const auto chi =
                    susceptibilities(cfg.bare, cfg.frame, cfg.scenario.mode);
                const auto g = effective_couplings_closed(cfg.bare, cfg.drives(), chi);
                sweep = sweep_smatrix(cfg.bare, cfg.frame, g, grid, global.io(),
                                      smatrix_direct_route);
            } else {
                const auto build = build_from(cfg, global.io());
                sweep = sweep_smatrix(build.bare, build.frame, build.solution.couplings,
                                      grid, global.io(), smatrix_direct_route);
            }
            std::ofstream file;
            auto& out = open_output(file, smatrix_out);
            write_sweep_csv(out, sweep);
        } else if (cmd_isolate->parsed()) {
            auto cfg = global.load();
            ScenarioConfig scenario = cfg.scenario;
            scenario.io = global.io();
            auto build = build_scenario(scenario);
            if (isolate_omega != 0.0) {
                build.solution = isolation_solve(build.bare, build.frame, cfg.drives(),
                                                 build.chi, isolate_omega, global.io());
            }
            emit(solution_json(build.solution), isolate_out);
            if (!isolate_write.empty()) {
                cfg.v_mag = build.solution.required_v_mag;
                cfg.phi_x = build.solution.phi_x;
                write_config(cfg, isolate_write);
            }
        } else if (cmd_opt->parsed()) {
            const auto cfg = global.load();
            std::vector<FreeVar> vars;
            for (const auto& name : opt_free) {
                vars.push_back(parse_free_var(name));
            }
            std::vector<Bounds> bounds(vars.size());
            std::vector<bool> seen(vars.size(), false);
            for (const auto& spec : opt_bounds) {
                const auto eq = spec.find('=');
                const auto colon = spec.find(':', eq == std::string::npos ? 0 : eq);
                if (eq == std::string::npos || colon == std::string::npos) {
                    throw ConfigError("bad bounds entry '" + spec + "', expected name=lo:hi");
                }
                const FreeVar var = parse_free_var(spec.substr(0, eq));
                const double lo = std::stod(spec.substr(eq + 1, colon - eq - 1));
                const double hi = std::stod(spec.substr(colon + 1));
                bool matched = false;
                for (std::size_t i = 0; i < vars.size(); ++i) {
                    if (vars[i] == var) {
                        bounds[i] = Bounds{lo, hi};
                        seen[i] = true;
                        matched = true;
                    }
                }
                if (!matched) {
                    throw ConfigError("bounds given for '" + to_string(var) +
                                      "', which is not a free variable");
                }
            }
            for (std::size_t i = 0; i < vars.size(); ++i) {
                if (!seen[i]) {
                    throw ConfigError("missing bounds for free variable '" +
                                      to_string(vars[i]) + "'");
                }
            }
            ScenarioConfig scenario = cfg.scenario;
            scenario.io = global.io();
            OptimizerSettings settings;
            settings.budget = opt_budget;
            settings.grid_points_per_axis = opt_grid;
            const auto report = maximize_backward(scenario, vars, bounds, settings);

            json names = json::array();
            for (const auto v : report.vars) {
                names.push_back(to_string(v));
            }
            json best = json::array();
            for (const double x : report.best_point) {
                best.push_back(x);
            }
            emit(json{{"free", std::move(names)},
                      {"best_point", std::move(best)},
                      {"best_objective", report.best_objective},
                      {"evaluations", report.evaluations},
                      {"success", report.success},
                      {"message", report.message},
                      {"trace_points", report.trace.size()}},
                 opt_out);
            if (!opt_trace.empty()) {
                std::ofstream file;
                auto& out = open_output(file, opt_trace);
                out << "phase";
                for (const auto v : report.vars) {
                    out << ", " << to_string(v);
                }
                out << ", objective, feasible, rwa_pass\n";
                for (const auto& tp : report.trace) {
                    out << tp.phase;
                    for (const double x : tp.x) {
                        out << ", " << fmt(x);
                    }
                    out << ", " << fmt(tp.objective) << ", " << (tp.feasible ? 1 : 0) << ", "
                        << (tp.rwa_pass ? 1 : 0) << "\n";
                }
            }
        } else if (cmd_oracle->parsed()) {
            const auto cfg = global.load();
            const auto build = build_from(cfg, global.io());
            VerifySettings settings;
            settings.mode = oracle_mode.empty() ? cfg.oracle.mode : parse_mode(oracle_mode);
            settings.drive_scale =
                oracle_scale > 0.0 ? oracle_scale : cfg.oracle.drive_scale;
            settings.integrator.t_end = cfg.oracle.t_end;
            settings.integrator.tol = cfg.oracle.tol;
            settings.integrator.analysis_periods = cfg.oracle.periods;
            settings.integrator.samples_per_period = cfg.oracle.samples_per_period;
            const auto cmp = verify_expansion(build.bare, build.solution.drives, settings);
            json rows = json::array();
            for (const auto& row : cmp.rows) {
                json keys = json::array();
                for (const auto& key : row.keys) {
                    keys.push_back(symbol(key));
                }
                rows.push_back({{"mode", to_string(row.mode)},
                                {"frequency", row.frequency},
                                {"keys", std::move(keys)},
                                {"analytic", complex_json(row.analytic)},
                                {"measured", complex_json(row.measured)},
                                {"rel_err", row.rel_err},
                                {"min_order", row.min_order},
                                {"pure_order2", row.pure_order2}});
            }
            emit(json{{"mode", settings.mode == ChiMode::paper_literal ? "paper-literal"
                                                                       : "drive-shifted"},
                      {"drive_scale", settings.drive_scale},
                      {"rows", std::move(rows)},
                      {"worst_rel_err", cmp.worst_rel_err},
                      {"worst_order2_rel_err", cmp.worst_order2_rel_err},
                      {"half_scale_worst_order2", cmp.half_scale_worst_order2},
                      {"scaling_ratio", cmp.scaling_ratio},
                      {"periodicity_residual", cmp.periodicity_residual},
                      {"minus_x_relation_residual", cmp.minus_x_relation_residual},
                      {"minus_3x_relation_residual", cmp.minus_3x_relation_residual}},
                 oracle_out);
            if (!oracle_csv.empty()) {
                std::ofstream file;
                auto& out = open_output(file, oracle_csv);
                out << "mode, frequency_rad_s, keys, rel_err, min_order\n";
                for (const auto& row : cmp.rows) {
                    out << to_string(row.mode) << ", " << fmt(row.frequency) << ", ";
                    for (std::size_t i = 0; i < row.keys.size(); ++i) {
                        out << (i > 0 ? "+" : "") << symbol(row.keys[i]);
                    }
                    out << ", " << fmt(row.rel_err) << ", " << row.min_order << "\n";
                }
            }
        } else if (cmd_fig3->parsed()) {
            const auto scenario = fig3_panel(fig3_panel_name[0]);
            const auto build = build_scenario(scenario);
            const auto grid = omega_grid(-5e4, 5e4, 2001);
            const auto sweep =
                sweep_smatrix(build.bare, build.frame, build.solution.couplings, grid);
            const std::string path =
                fig3_out.empty() ? "fig3" + fig3_panel_name + ".csv" : fig3_out;
            std::ofstream file;
            auto& out = open_output(file, path);
            write_sweep_csv(out, sweep);
            const auto bw = isolation_bandwidth(sweep, 20.0);
            std::cerr << "panel " << fig3_panel_name << ": |S12(0)|^2 = "
                      << build.solution.residual_s12_abs2
                      << ", |S21(0)|^2 = " << build.solution.backward_s21_abs2
                      << ", 20 dB bandwidth = " << bw.bandwidth << " rad/s\n";
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) { return run_cli(argc, argv); }

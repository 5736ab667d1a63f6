#include "nonrecip/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "nonrecip/errors.hpp"

namespace nonrecip {

namespace {

using State = std::array<Complex, 4>;  // (alpha1, alpha2, beta1, beta2)

struct Rhs {
    const BareParams& bare;
    Complex e1, e2, vd;
    double wp, wx;
    double g11, g12, g21, g22;
    Complex pole_a1, pole_a2, pole_b1, pole_b2;
    mutable long evaluations = 0;

    Rhs(const BareParams& b, const DriveConfig& d)
        : bare(b),
          e1(d.drive1()),
          e2(d.drive2()),
          vd(d.rf_drive()),
          wp(d.omega_plus),
          wx(d.omega_x),
          g11(b.g0_11),
          g12(b.g0_12),
          g21(b.g0_21),
          g22(b.g0_22),
          pole_a1(b.kappa, b.delta_l),
          pole_a2(0.5 * b.gamma_lc, b.omega_lc0),
          pole_b1(0.5 * b.gamma_m1, b.omega_1),
          pole_b2(0.5 * b.gamma_m2, b.omega_2) {}

    State operator()(double t, const State& y) const {
        ++evaluations;
        const Complex a1 = y[0], a2 = y[1], b1 = y[2], b2 = y[3];
        const double re_b1 = 2.0 * b1.real();
        const double re_b2 = 2.0 * b2.real();
        const double re_a2 = 2.0 * a2.real();
        const Complex tone = std::polar(1.0, wp * t);
        const Complex drive_opt = e1 * tone + e2 * std::conj(tone);
        const Complex drive_rf = vd * std::polar(1.0, wx * t);
        State dy;
        dy[0] = -pole_a1 * a1 - kImag * drive_opt -
                kImag * a1 * (g11 * re_b1 + g12 * re_b2);
        dy[1] = -pole_a2 * a2 + 2.0 * kImag * re_a2 * (g21 * re_b1 + g22 * re_b2) +
                kImag * drive_rf;
        dy[2] = -pole_b1 * b1 - kImag * g11 * std::norm(a1) +
                kImag * g21 * re_a2 * re_a2;
        dy[3] = -pole_b2 * b2 - kImag * g12 * std::norm(a1) +
                kImag * g22 * re_a2 * re_a2;
        return dy;
    }
};

// Dormand-Prince 5(4) coefficients.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA2[] = {1.0 / 5};
constexpr double kA3[] = {3.0 / 40, 9.0 / 40};
constexpr double kA4[] = {44.0 / 45, -56.0 / 15, 32.0 / 9};
constexpr double kA5[] = {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729};
constexpr double kA6[] = {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176,
                          -5103.0 / 18656};
constexpr double kB[] = {35.0 / 384,      0.0, 500.0 / 1113, 125.0 / 192,
                         -2187.0 / 6784, 11.0 / 84};
// Difference between the 5th- and embedded 4th-order weights.
constexpr double kE[] = {71.0 / 57600,       0.0,         -71.0 / 16695, 71.0 / 1920,
                         -17253.0 / 339200, 22.0 / 525,   -1.0 / 40};

struct Stepper {
    const Rhs& rhs;
    double tol_eff;     // superlinear tightening of the nominal tolerance
    double base_period;
    double h_max;
    std::array<double, 4> scale_floor{};  // running per-component magnitudes
    IntegratorStats stats;
    double h = 0.0;

    Stepper(const Rhs& f, double tol, double period) : rhs(f), base_period(period) {
        // Tightened so that convergence in tol has margin over first order;
        // floored where per-step roundoff would dominate the estimate.
        tol_eff = std::max(std::pow(tol, 1.2), 5e-15);
        stats.min_step = std::numeric_limits<double>::infinity();
        h = period / 1024.0;
        // Keep the fastest natural rotation well inside the stability region;
        // otherwise decayed high-frequency modes ride the |R(i theta)| > 1
        // fringe once the error controller stops seeing them.
        const double fastest = std::max({std::abs(rhs.pole_a1.imag()),
                                         std::abs(rhs.pole_a2.imag()),
                                         std::abs(rhs.pole_b1.imag()),
                                         std::abs(rhs.pole_b2.imag()), 1.0 / period});
        h_max = std::min(period / 8.0, 0.45 / fastest);
    }

    void update_floor(const State& y) {
        for (int i = 0; i < 4; ++i) {
            scale_floor[i] = std::max(scale_floor[i], std::abs(y[i]));
        }
    }

    // One accepted step; advances t and y, adapting h. Never steps past t_stop.
    void step(double& t, State& y, double t_stop) {
        for (int attempt = 0; attempt < 200; ++attempt) {
            h = std::min(h, h_max);
            bool clipped = false;
            double h_try = h;
            if (t + h_try >= t_stop) {
                h_try = t_stop - t;
                clipped = true;
            }

            const State k1 = rhs(t, y);
            State u;
            for (int i = 0; i < 4; ++i) u[i] = y[i] + h_try * (kA2[0] * k1[i]);
            const State k2 = rhs(t + kC[1] * h_try, u);
            for (int i = 0; i < 4; ++i)
                u[i] = y[i] + h_try * (kA3[0] * k1[i] + kA3[1] * k2[i]);
            const State k3 = rhs(t + kC[2] * h_try, u);
            for (int i = 0; i < 4; ++i)
                u[i] = y[i] + h_try * (kA4[0] * k1[i] + kA4[1] * k2[i] + kA4[2] * k3[i]);
            const State k4 = rhs(t + kC[3] * h_try, u);
            for (int i = 0; i < 4; ++i)
                u[i] = y[i] + h_try * (kA5[0] * k1[i] + kA5[1] * k2[i] + kA5[2] * k3[i] +
                                       kA5[3] * k4[i]);
            const State k5 = rhs(t + kC[4] * h_try, u);
            for (int i = 0; i < 4; ++i)
                u[i] = y[i] + h_try * (kA6[0] * k1[i] + kA6[1] * k2[i] + kA6[2] * k3[i] +
                                       kA6[3] * k4[i] + kA6[4] * k5[i]);
            const State k6 = rhs(t + kC[5] * h_try, u);
            State y_new;
            for (int i = 0; i < 4; ++i) {
                y_new[i] = y[i] + h_try * (kB[0] * k1[i] + kB[2] * k3[i] + kB[3] * k4[i] +
                                           kB[4] * k5[i] + kB[5] * k6[i]);
            }
            const State k7 = rhs(t + h_try, y_new);

            double err = 0.0;
            for (int i = 0; i < 4; ++i) {
                const Complex e = h_try * (kE[0] * k1[i] + kE[2] * k3[i] + kE[3] * k4[i] +
                                           kE[4] * k5[i] + kE[5] * k6[i] + kE[6] * k7[i]);
                const double scale = std::max({std::abs(y[i]), std::abs(y_new[i]),
                                               1e-3 * scale_floor[i], 1e-280});
                err = std::max(err, std::abs(e) / scale);
            }
            const double bound = tol_eff * (h_try / base_period);

            if (err <= bound) {
                t = clipped ? t_stop : t + h_try;
                y = y_new;
                for (int i = 0; i < 4; ++i) {
                    if (!std::isfinite(y[i].real()) || !std::isfinite(y[i].imag())) {
                        throw IntegratorError("state diverged (non-finite amplitude) at t = " +
                                              std::to_string(t));
                    }
                }
                update_floor(y);
                ++stats.steps;
                stats.min_step = std::min(stats.min_step, h_try);
                stats.max_error_estimate = std::max(stats.max_error_estimate, err);
                if (!clipped) {
                    const double grow =
                        err > 0.0 ? 0.9 * std::pow(bound / err, 0.2) : 5.0;
                    h = h_try * std::clamp(grow, 0.2, 5.0);
                }
                // A clipped landing keeps the controller's step estimate.
                return;
            }

            ++stats.rejected;
            const double shrink = 0.9 * std::pow(bound / err, 0.2);
            h = h_try * std::clamp(shrink, 0.1, 0.9);
            if (h < 1e-18 * base_period) {
                throw IntegratorError(
                    "step size collapsed at t = " + std::to_string(t) +
                    " (scaled error " + std::to_string(err) + "); system too stiff");
            }
        }
        throw IntegratorError("step rejected 200 times in a row");
    }
};

int min_samples_per_period(const BareParams& bare, const DriveConfig& drives) {
    const double fastest =
        std::max({3.0 * drives.omega_x, 3.0 * drives.omega_plus, bare.omega_lc0});
    return static_cast<int>(std::ceil(40.0 * fastest / drives.omega_plus));
}

}  // namespace

Trajectory integrate_classical(const BareParams& bare, const DriveConfig& drives,
                               double t_end, double tol,
                               const IntegratorSettings& settings) {
    bare.validate();
    drives.validate();
    if (!(tol >= 1e-12 && tol <= 1e-6)) {
        throw InvalidParameterError("integrator tol must lie in [1e-12, 1e-6]");
    }
    const double gamma_min = std::min(bare.gamma_m1, bare.gamma_m2);
    if (t_end <= 0.0) {
        t_end = 10.0 / gamma_min;
    }
    if (t_end < 8.0 / gamma_min) {
        throw InvalidParameterError("t_end below the transient-decay floor 8/min(gamma_m)");
    }

    const double period = 2.0 * kPi / drives.omega_plus;
    const int periods = std::max(settings.analysis_periods, 1);
    const int samples =
        std::max(settings.samples_per_period, min_samples_per_period(bare, drives));
    const double window = periods * period;
    if (window >= t_end) {
        throw InvalidParameterError("analysis window longer than the integration span");
    }
    const double dt_sample = period / samples;
    const double window_start = t_end - window;

    State y{};
    if (settings.initial.has_value()) {
        y = {settings.initial->alpha1, settings.initial->alpha2, settings.initial->beta1,
             settings.initial->beta2};
    } else if (settings.seed_from_catalog) {
        Susceptibilities chi;
        chi.mode = settings.seed_mode;
        chi.kappa = bare.kappa;
        chi.delta_l = bare.delta_l;
        chi.gamma_lc = bare.gamma_lc;
        chi.omega_lc0 = bare.omega_lc0;
        chi.gamma_m1 = bare.gamma_m1;
        chi.gamma_m2 = bare.gamma_m2;
        chi.omega_1 = bare.omega_1;
        chi.omega_2 = bare.omega_2;
        chi.omega_plus = drives.omega_plus;
        chi.omega_x = drives.omega_x;
        const auto seed = amplitude_at_time(perturbative_harmonics(bare, drives, chi), 0.0);
        y = {seed.alpha1, seed.alpha2, seed.beta1, seed.beta2};
    }

    const Rhs rhs(bare, drives);
    Stepper stepper(rhs, tol, period);
    stepper.update_floor(y);

    double t = 0.0;
    while (t < window_start) {
        stepper.step(t, y, window_start);
    }

    Trajectory traj;
    traj.sample_dt = dt_sample;
    traj.base_period = period;
    traj.periods = periods;
    const long total = static_cast<long>(periods) * samples;
    traj.t.reserve(total + 1);
    traj.alpha1.reserve(total + 1);
    traj.alpha2.reserve(total + 1);
    traj.beta1.reserve(total + 1);
    traj.beta2.reserve(total + 1);

    const auto record = [&](double time, const State& s) {
        traj.t.push_back(time);
        traj.alpha1.push_back(s[0]);
        traj.alpha2.push_back(s[1]);
        traj.beta1.push_back(s[2]);
        traj.beta2.push_back(s[3]);
    };
    record(t, y);
    for (long m = 1; m <= total; ++m) {
        const double target = window_start + m * dt_sample;
        while (t < target) {
            stepper.step(t, y, target);
        }
        record(t, y);
    }
    traj.stats = stepper.stats;
    traj.stats.rhs_evaluations = rhs.evaluations;
    return traj;
}

std::map<HarmonicKey, Complex> extract_harmonics(const Trajectory& traj,
                                                 const std::vector<HarmonicKey>& keys,
                                                 const HarmonicCatalog& catalog) {
    if (traj.periods < 4) {
        throw ProjectionError("analysis window must span at least 4 base periods");
    }
    const std::size_t n = traj.t.size();
    if (n < 2) {
        throw ProjectionError("trajectory too short for projection");
    }
    const double span = traj.t.back() - traj.t.front();
    const double expected = traj.periods * traj.base_period;
    if (std::abs(span - expected) > 1e-6 * traj.base_period) {
        throw ProjectionError("analysis window is not an integer number of base periods");
    }
    const double base = 2.0 * kPi / traj.base_period;  // omega_plus
    const double resolution = base / traj.periods;

    // Project once per distinct frequency; keys sharing a tone (resonant
    // merging) read the same measured value.
    std::map<HarmonicKey, Complex> out;
    std::map<std::pair<int, long>, Complex> cache;
    for (const auto& key : keys) {
        const double freq = catalog.frequency(key);
        const double cycles = freq / resolution;
        const long m = std::lround(cycles);
        if (std::abs(cycles - m) > 1e-6) {
            throw ProjectionError("frequency of " + symbol(key) +
                                  " is not resolved by the analysis window");
        }
        const auto cache_key = std::make_pair(static_cast<int>(key.mode), m);
        const auto it = cache.find(cache_key);
        if (it != cache.end()) {
            out[key] = it->second;
            continue;
        }
        const std::vector<Complex>* series = nullptr;
        switch (key.mode) {
            case FieldMode::a1: series = &traj.alpha1; break;
            case FieldMode::a2: series = &traj.alpha2; break;
            case FieldMode::b1: series = &traj.beta1; break;
            case FieldMode::b2: series = &traj.beta2; break;
        }
        const double w = m * resolution;
        Complex acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double weight = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
            acc += weight * (*series)[i] * std::polar(1.0, -w * (traj.t[i] - traj.t.front()));
        }
        // Trapezoid of (1/span) integral; the t-origin phase is restored so
        // coefficients refer to absolute time as the catalog does.
        Complex coeff = acc * traj.sample_dt / span;
        coeff *= std::polar(1.0, -w * traj.t.front());
        cache[cache_key] = coeff;
        out[key] = coeff;
    }
    return out;
}

namespace {

double periodicity_residual(const Trajectory& traj, int samples_per_period) {
    const std::size_t n = traj.t.size();
    const std::size_t lag = static_cast<std::size_t>(samples_per_period);
    if (n <= lag) {
        return 0.0;
    }
    double worst = 0.0;
    for (const auto* series : {&traj.alpha1, &traj.alpha2, &traj.beta1, &traj.beta2}) {
        double diff2 = 0.0;
        double norm2 = 0.0;
        for (std::size_t i = 0; i + lag < n; ++i) {
            diff2 += std::norm((*series)[i + lag] - (*series)[i]);
            norm2 += std::norm((*series)[i]);
        }
        if (norm2 > 0.0) {
            worst = std::max(worst, std::sqrt(diff2 / norm2));
        }
    }
    return worst;
}

double last_periods_residual(const Trajectory& traj, int samples_per_period) {
    const std::size_t n = traj.t.size();
    const std::size_t lag = static_cast<std::size_t>(samples_per_period);
    if (n < 2 * lag + 1) {
        return 0.0;
    }
    double worst = 0.0;
    for (const auto* series : {&traj.alpha1, &traj.alpha2, &traj.beta1, &traj.beta2}) {
        double diff2 = 0.0;
        double norm2 = 0.0;
        for (std::size_t i = n - 1 - lag; i < n - 1; ++i) {
            diff2 += std::norm((*series)[i] - (*series)[i - lag]);
            norm2 += std::norm((*series)[i]);
        }
        if (norm2 > 0.0) {
            worst = std::max(worst, std::sqrt(diff2 / norm2));
        }
    }
    return worst;
}

struct SingleScaleResult {
    std::vector<ComparisonRow> rows;
    double worst = 0.0;
    std::size_t worst_row = 0;
    double worst_order2 = 0.0;
    double periodicity = 0.0;
};

SingleScaleResult compare_at_scale(const BareParams& bare, const DriveConfig& base_drives,
                                   double scale, const VerifySettings& settings) {
    DriveConfig drives = base_drives;
    drives.e1 *= scale;
    drives.e2 *= scale;
    drives.v_mag *= scale;

    Susceptibilities chi;
    chi.mode = settings.mode;
    chi.kappa = bare.kappa;
    chi.delta_l = bare.delta_l;
    chi.gamma_lc = bare.gamma_lc;
    chi.omega_lc0 = bare.omega_lc0;
    chi.gamma_m1 = bare.gamma_m1;
    chi.gamma_m2 = bare.gamma_m2;
    chi.omega_1 = bare.omega_1;
    chi.omega_2 = bare.omega_2;
    chi.omega_plus = drives.omega_plus;
    chi.omega_x = drives.omega_x;
    const auto catalog = perturbative_harmonics(bare, drives, chi);

    IntegratorSettings integ = settings.integrator;
    integ.seed_mode = settings.mode == ChiMode::paper_literal ? ChiMode::drive_shifted
                                                              : settings.mode;
    double t_end = integ.t_end;
    const double tol = integ.tol;

    Trajectory traj = integrate_classical(bare, drives, t_end, tol, integ);
    const int samples = static_cast<int>(std::lround(traj.base_period / traj.sample_dt));
    double settle = last_periods_residual(traj, samples);
    if (settle > 10.0 * tol) {
        // Transient not yet decayed: extend once before giving up.
        t_end = 2.0 * (t_end > 0.0 ? t_end : 10.0 / std::min(bare.gamma_m1, bare.gamma_m2));
        traj = integrate_classical(bare, drives, t_end, tol, integ);
        settle = last_periods_residual(traj, samples);
        if (settle > 10.0 * tol) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.3e (vs 10 tol = %.3e)", settle, 10.0 * tol);
            throw IntegratorError(std::string("steady state not reached: ") +
                                  "period-to-period residual " + buf);
        }
    }

    const auto keys = catalog.keys();
    const auto measured = extract_harmonics(traj, keys, catalog);

    // Group degenerate frequencies per mode.
    std::map<std::pair<int, long>, ComparisonRow> groups;
    const double resolution = (2.0 * kPi / traj.base_period) / traj.periods;
    for (const auto& key : keys) {
        const double freq = catalog.frequency(key);
        const long m = std::lround(freq / resolution);
        auto& row = groups[{static_cast<int>(key.mode), m}];
        if (row.keys.empty()) {
            row.mode = key.mode;
            row.frequency = freq;
            row.measured = measured.at(key);
            row.min_order = key.order;
            row.pure_order2 = true;
        }
        row.keys.push_back(key);
        row.analytic += catalog.at(key);
        row.min_order = std::min(row.min_order, key.order);
        row.pure_order2 = row.pure_order2 && key.order == 2;
    }

    SingleScaleResult out;
    out.periodicity = periodicity_residual(traj, samples);
    for (auto& [id, row] : groups) {
        const double denom = std::max(std::abs(row.measured), 1e-300);
        row.rel_err = std::abs(row.analytic - row.measured) / denom;
        if (row.rel_err > out.worst) {
            out.worst = row.rel_err;
            out.worst_row = out.rows.size();
        }
        if (row.pure_order2) {
            out.worst_order2 = std::max(out.worst_order2, row.rel_err);
        }
        out.rows.push_back(row);
    }
    return out;
}

}  // namespace

HarmonicComparison verify_expansion(const BareParams& bare, const DriveConfig& drives,
                                    const VerifySettings& settings) {
    VerifySettings local = settings;
    const auto full = compare_at_scale(bare, drives, local.drive_scale, local);

    HarmonicComparison out;
    out.mode = settings.mode;
    out.rows = full.rows;
    out.worst_rel_err = full.worst;
    out.worst_row = full.worst_row;
    out.worst_order2_rel_err = full.worst_order2;
    out.periodicity_residual = full.periodicity;

    if (settings.run_half_scale) {
        const auto half = compare_at_scale(bare, drives, 0.5 * local.drive_scale, local);
        out.half_scale_worst_order2 = half.worst_order2;
        out.scaling_ratio =
            full.worst_order2 > 0.0 ? half.worst_order2 / full.worst_order2 : 0.0;
    }

    // Printed prefactor relation between the +/-X (and +/-3X) second-order rf
    // lines, evaluated against the directly computed entries.
    {
        Susceptibilities chi;
        chi.mode = settings.mode;
        chi.kappa = bare.kappa;
        chi.delta_l = bare.delta_l;
        chi.gamma_lc = bare.gamma_lc;
        chi.omega_lc0 = bare.omega_lc0;
        chi.gamma_m1 = bare.gamma_m1;
        chi.gamma_m2 = bare.gamma_m2;
        chi.omega_1 = bare.omega_1;
        chi.omega_2 = bare.omega_2;
        chi.omega_plus = drives.omega_plus;
        chi.omega_x = drives.omega_x;
        DriveConfig scaled = drives;
        scaled.e1 *= local.drive_scale;
        scaled.e2 *= local.drive_scale;
        scaled.v_mag *= local.drive_scale;
        const auto catalog = perturbative_harmonics(bare, scaled, chi);
        const Complex chi1 = chi.chi_1();
        const Complex pref = -chi1 / std::conj(chi1);
        const Complex mx_direct = catalog.at({FieldMode::a2, 2, 0, -1});
        const Complex mx_printed = pref * std::conj(catalog.at({FieldMode::a2, 2, 0, 1}));
        out.minus_x_relation_residual =
            std::abs(mx_printed - mx_direct) / std::max(std::abs(mx_direct), 1e-300);
        const Complex m3x_direct = catalog.at({FieldMode::a2, 2, 0, -3});
        const Complex m3x_printed = pref * std::conj(catalog.at({FieldMode::a2, 2, 0, 3}));
        out.minus_3x_relation_residual =
            std::abs(m3x_printed - m3x_direct) / std::max(std::abs(m3x_direct), 1e-300);
    }
    return out;
}

EquivalenceResult smatrix_equivalence(const BareParams& bare, const FrameConfig& frame,
                                      const EffectiveCouplings& g,
                                      const std::vector<double>& grid, IoSign io) {
    EquivalenceResult out;
    for (const double w : grid) {
        const auto closed = smatrix(bare, frame, g, w, io);
        const auto direct = smatrix_direct(bare, frame, g, w, io);
        if (closed.singular || direct.singular) {
            ++out.singular_points;
            continue;
        }
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                const double ds = std::abs(closed.s[i][j] - direct.s[i][j]) /
                                  std::max(std::abs(closed.s[i][j]), 1e-300);
                const double dt = std::abs(closed.t[i][j] - direct.t[i][j]) /
                                  std::max(std::abs(closed.t[i][j]), 1e-300);
                out.max_rel_deviation = std::max({out.max_rel_deviation, ds, dt});
            }
        }
    }
    return out;
}

}  // namespace nonrecip

#include "nonrecip/scattering.hpp"

#include <algorithm>
#include <cmath>

#include "nonrecip/errors.hpp"

namespace nonrecip {

namespace {

constexpr double kSingularFloor = 1e-30;

// In-place partial-pivot LU solve of a 4x4 complex system for one rhs.
struct Lu4 {
    std::array<std::array<Complex, 4>, 4> lu{};
    std::array<int, 4> piv{};
    bool singular = false;

    explicit Lu4(const std::array<std::array<Complex, 4>, 4>& a) : lu(a) {
        for (int k = 0; k < 4; ++k) {
            piv[k] = k;
        }
        for (int k = 0; k < 4; ++k) {
            int p = k;
            double best = std::abs(lu[k][k]);
            for (int i = k + 1; i < 4; ++i) {
                const double v = std::abs(lu[i][k]);
                if (v > best) {
                    best = v;
                    p = i;
                }
            }
            if (best == 0.0) {
                singular = true;
                return;
            }
            if (p != k) {
                std::swap(lu[p], lu[k]);
                std::swap(piv[p], piv[k]);
            }
            for (int i = k + 1; i < 4; ++i) {
                lu[i][k] /= lu[k][k];
                for (int j = k + 1; j < 4; ++j) {
                    lu[i][j] -= lu[i][k] * lu[k][j];
                }
            }
        }
    }

    std::array<Complex, 4> solve(const std::array<Complex, 4>& b) const {
        std::array<Complex, 4> y{};
        for (int i = 0; i < 4; ++i) {
            Complex sum = b[piv[i]];
            for (int j = 0; j < i; ++j) {
                sum -= lu[i][j] * y[j];
            }
            y[i] = sum;
        }
        std::array<Complex, 4> x{};
        for (int i = 3; i >= 0; --i) {
            Complex sum = y[i];
            for (int j = i + 1; j < 4; ++j) {
                sum -= lu[i][j] * x[j];
            }
            x[i] = sum / lu[i][i];
        }
        return x;
    }
};

}  // namespace

Complex mechanical_chi(const BareParams& bare, const FrameConfig& frame, int j,
                       double omega) {
    const double gm = j == 1 ? bare.gamma_m1 : bare.gamma_m2;
    const double sign = j == 1 ? -1.0 : 1.0;
    return 1.0 / Complex(0.5 * gm, sign * frame.delta - omega);
}

SMatrixPoint smatrix(const BareParams& bare, const FrameConfig& frame,
                     const EffectiveCouplings& g, double omega, IoSign io) {
    SMatrixPoint out;
    const Complex cm1 = mechanical_chi(bare, frame, 1, omega);
    const Complex cm2 = mechanical_chi(bare, frame, 2, omega);
    out.chi_m1 = cm1;
    out.chi_m2 = cm2;
    out.f12 = g.g11 * cm1 * g.g21 + g.g12 * cm2 * g.g22;
    out.f21 = std::conj(g.g11) * cm1 * std::conj(g.g21) +
              std::conj(g.g12) * cm2 * std::conj(g.g22);
    const Complex m11 =
        std::norm(g.g11) * cm1 + std::norm(g.g12) * cm2 + Complex(bare.kappa, -omega);
    const Complex m22 = std::norm(g.g21) * cm1 + std::norm(g.g22) * cm2 +
                        Complex(0.5 * bare.gamma_lc, -omega);
    out.d = m11 * m22 - out.f12 * out.f21;
    if (std::abs(out.d) < kSingularFloor) {
        out.singular = true;
        return out;
    }
    const double io_term = io == IoSign::plus_ain ? 1.0 : -1.0;
    const double pref = std::sqrt(2.0 * bare.kappa * bare.gamma_lc);
    out.s[0][0] = 2.0 * bare.kappa * m22 / out.d + io_term;
    out.s[0][1] = pref * out.f12 / out.d;
    out.s[1][0] = pref * out.f21 / out.d;
    out.s[1][1] = bare.gamma_lc * m11 / out.d + io_term;
    out.t[0][0] = -kImag * std::sqrt(2.0 * bare.kappa * bare.gamma_m1) * cm1 *
                  (m22 * g.g11 - out.f12 * std::conj(g.g21)) / out.d;
    out.t[0][1] = -kImag * std::sqrt(2.0 * bare.kappa * bare.gamma_m2) * cm2 *
                  (m22 * g.g12 - out.f12 * std::conj(g.g22)) / out.d;
    out.t[1][0] = kImag * std::sqrt(bare.gamma_lc * bare.gamma_m1) * cm1 *
                  (m11 * std::conj(g.g21) - out.f21 * g.g11) / out.d;
    out.t[1][1] = kImag * std::sqrt(bare.gamma_lc * bare.gamma_m2) * cm2 *
                  (m11 * std::conj(g.g22) - out.f21 * g.g12) / out.d;
    return out;
}

SMatrixPoint smatrix_direct(const BareParams& bare, const FrameConfig& frame,
                            const EffectiveCouplings& g, double omega, IoSign io) {
    SMatrixPoint out;
    const Complex cm1 = mechanical_chi(bare, frame, 1, omega);
    const Complex cm2 = mechanical_chi(bare, frame, 2, omega);
    out.chi_m1 = cm1;
    out.chi_m2 = cm2;

    // Modes ordered (da1, da2, db1, db2); row k is the steady-state equation
    // of mode k at frequency omega.
    std::array<std::array<Complex, 4>, 4> a{};
    a[0][0] = Complex(bare.kappa, -omega);
    a[0][2] = kImag * g.g11;
    a[0][3] = kImag * g.g12;
    a[1][1] = Complex(0.5 * bare.gamma_lc, -omega);
    a[1][2] = -kImag * std::conj(g.g21);
    a[1][3] = -kImag * std::conj(g.g22);
    a[2][2] = Complex(0.5 * bare.gamma_m1, -frame.delta - omega);
    a[2][0] = kImag * std::conj(g.g11);
    a[2][1] = -kImag * g.g21;
    a[3][3] = Complex(0.5 * bare.gamma_m2, frame.delta - omega);
    a[3][0] = kImag * std::conj(g.g12);
    a[3][1] = -kImag * g.g22;

    const Lu4 lu(a);
    if (lu.singular) {
        out.singular = true;
        return out;
    }

    const double io_term = io == IoSign::plus_ain ? 1.0 : -1.0;
    const std::array<double, 4> in_rates = {std::sqrt(2.0 * bare.kappa),
                                            std::sqrt(bare.gamma_lc),
                                            std::sqrt(bare.gamma_m1),
                                            std::sqrt(bare.gamma_m2)};
    for (int k = 0; k < 4; ++k) {
        std::array<Complex, 4> b{};
        b[k] = in_rates[k];
        const auto x = lu.solve(b);
        const Complex a1_out = std::sqrt(2.0 * bare.kappa) * x[0] + (k == 0 ? io_term : 0.0);
        const Complex a2_out = std::sqrt(bare.gamma_lc) * x[1] + (k == 1 ? io_term : 0.0);
        if (k < 2) {
            out.s[0][k] = a1_out;
            out.s[1][k] = a2_out;
        } else {
            out.t[0][k - 2] = a1_out;
            out.t[1][k - 2] = a2_out;
        }
    }
    out.f12 = g.g11 * cm1 * g.g21 + g.g12 * cm2 * g.g22;
    out.f21 = std::conj(g.g11) * cm1 * std::conj(g.g21) +
              std::conj(g.g12) * cm2 * std::conj(g.g22);
    const Complex m11 =
        std::norm(g.g11) * cm1 + std::norm(g.g12) * cm2 + Complex(bare.kappa, -omega);
    const Complex m22 = std::norm(g.g21) * cm1 + std::norm(g.g22) * cm2 +
                        Complex(0.5 * bare.gamma_lc, -omega);
    out.d = m11 * m22 - out.f12 * out.f21;
    return out;
}

std::vector<double> omega_grid(double omega_min, double omega_max, int points) {
    if (points < 2 || !(omega_max > omega_min)) {
        throw InvalidParameterError("sweep grid needs points >= 2 and omega_max > omega_min");
    }
    std::vector<double> grid(points);
    const double step = (omega_max - omega_min) / (points - 1);
    for (int i = 0; i < points; ++i) {
        grid[i] = omega_min + i * step;
    }
    return grid;
}

ScatteringResult sweep_smatrix(const BareParams& bare, const FrameConfig& frame,
                               const EffectiveCouplings& g,
                               const std::vector<double>& grid, IoSign io, bool direct) {
    ScatteringResult out;
    out.omega_grid = grid;
    out.points.reserve(grid.size());
    for (const double w : grid) {
        out.points.push_back(direct ? smatrix_direct(bare, frame, g, w, io)
                                    : smatrix(bare, frame, g, w, io));
    }
    return out;
}

NonrecipSolution isolation_solve(const BareParams& bare, const FrameConfig& frame,
                                 const DriveConfig& drives, const Susceptibilities& chi,
                                 double omega, IoSign io) {
    if (drives.e1 <= 0.0 || drives.e2 <= 0.0) {
        throw SingularConfigurationError("isolation solve requires nonzero E1 and E2");
    }
    const Complex ratio =
        mechanical_chi(bare, frame, 1, omega) / mechanical_chi(bare, frame, 2, omega);
    // V' enters r only through the solved amplitude; probe with unit drive.
    DriveConfig probe = drives;
    probe.v_mag = 1.0;
    const auto iso = isolation_quantities(bare, probe, chi, ratio);
    const auto [mu, nu] = mu_nu(bare, chi);
    if (mu == 0.0) {
        throw SingularConfigurationError("isolation solve requires mu != 0");
    }
    const double non = nu / mu;
    const Complex denom = non + iso.r;
    if (std::abs(denom) == 0.0) {
        throw SingularConfigurationError("isolation solve: nu/mu + r vanishes");
    }
    const Complex chilc = chi.chi_lc();
    const Complex rhs = (chilc / std::conj(chilc)) * (non + std::conj(iso.r)) / denom;
    if (std::abs(std::abs(rhs) - 1.0) > 1e-9) {
        throw InternalConsistencyError("phase condition right-hand side is not unimodular");
    }
    const double g_param = non + 2.0 * iso.r.real();
    if (!(g_param > 0.0)) {
        throw NoPhysicalDriveError("no real drive amplitude: nu/mu + 2 Re{r} = " +
                                   std::to_string(g_param));
    }

    NonrecipSolution sol;
    sol.required_phase = std::arg(rhs);
    sol.g_param = g_param;
    sol.required_v_mag =
        std::abs(chi.chi_1() * drives.drive1() / chilc) * std::sqrt(g_param);
    sol.phi_11 = drives.phi_11;
    sol.phi_12 = drives.phi_12;
    // 2(phi_11 - phi_12 - phi_x) - pi = varphi, solved for the rf phase.
    sol.phi_x = std::remainder(
        drives.phi_11 - drives.phi_12 - 0.5 * (sol.required_phase + kPi), 2.0 * kPi);

    sol.drives = drives;
    sol.drives.v_mag = sol.required_v_mag;
    sol.drives.phi_x = sol.phi_x;
    sol.couplings = effective_couplings_closed(bare, sol.drives, chi);
    const auto point = smatrix(bare, frame, sol.couplings, omega, io);
    sol.residual_s12_abs2 = std::norm(point.s[0][1]);
    sol.backward_s21_abs2 = std::norm(point.s[1][0]);
    sol.f21_at_zero = point.f21;
    return sol;
}

BandwidthResult isolation_bandwidth(const ScatteringResult& result, double floor_db) {
    const auto& grid = result.omega_grid;
    std::size_t zero = grid.size();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (std::abs(grid[i]) < 1e-12 * std::max(1.0, std::abs(grid.back()))) {
            zero = i;
            break;
        }
    }
    if (zero == grid.size()) {
        throw InvalidParameterError("isolation bandwidth needs omega = 0 on the grid");
    }

    const auto isolation_db = [&](std::size_t i) {
        const double fwd = std::norm(result.points[i].s[0][1]);
        const double bwd = std::norm(result.points[i].s[1][0]);
        if (fwd == 0.0) {
            return 300.0;  // exact null; capped
        }
        return std::min(10.0 * std::log10(bwd / fwd), 300.0);
    };

    BandwidthResult out;
    out.peak_isolation_db = isolation_db(zero);
    if (out.peak_isolation_db < floor_db) {
        return out;  // empty bandwidth
    }
    std::size_t lo = zero;
    while (lo > 0 && isolation_db(lo - 1) >= floor_db) {
        --lo;
    }
    std::size_t hi = zero;
    while (hi + 1 < grid.size() && isolation_db(hi + 1) >= floor_db) {
        ++hi;
    }
    out.bandwidth = grid[hi] - grid[lo];
    return out;
}

}  // namespace nonrecip

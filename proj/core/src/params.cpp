#include "nonrecip/params.hpp"

#include <cmath>
#include <string>

#include "nonrecip/errors.hpp"

namespace nonrecip {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0)) {
        throw InvalidParameterError(std::string(name) + " must be positive, got " +
                                    std::to_string(value));
    }
}

void require_nonnegative(double value, const char* name) {
    if (!(value >= 0.0)) {
        throw InvalidParameterError(std::string(name) + " must be nonnegative, got " +
                                    std::to_string(value));
    }
}

}  // namespace

double BareParams::g0(int ell, int j) const {
    if (ell == 1) {
        return j == 1 ? g0_11 : g0_12;
    }
    return j == 1 ? g0_21 : g0_22;
}

void BareParams::validate() const {
    require_positive(kappa, "kappa");
    require_positive(gamma_lc, "gamma_lc");
    require_positive(gamma_m1, "gamma_m1");
    require_positive(gamma_m2, "gamma_m2");
    require_positive(omega_1, "omega_1");
    require_positive(omega_2, "omega_2");
    require_positive(omega_lc0, "omega_lc0");
    require_nonnegative(nbar_1, "nbar_1");
    require_nonnegative(nbar_2, "nbar_2");
    require_nonnegative(ntilde_2, "ntilde_2");
}

void DriveConfig::validate() const {
    require_nonnegative(e1, "e1");
    require_nonnegative(e2, "e2");
    require_nonnegative(v_mag, "v_mag");
    require_positive(omega_plus, "omega_plus");
    require_positive(omega_x, "omega_x");
}

double drive_rate_from_power(double power_watt, double kappa_in, double omega_l) {
    require_nonnegative(power_watt, "power");
    require_positive(kappa_in, "kappa_in");
    require_positive(omega_l, "omega_l");
    return std::sqrt(2.0 * kappa_in * power_watt / (kHbar * omega_l));
}

Complex rf_drive_rate(double v_ac, double q_zpf, double phi_x) {
    require_nonnegative(v_ac, "v_ac");
    require_positive(q_zpf, "q_zpf");
    const double mag = q_zpf * v_ac / (2.0 * kHbar * std::sqrt(2.0));
    return std::polar(mag, phi_x);
}

}  // namespace nonrecip

#include "nonrecip/meanfield.hpp"

#include <cmath>

#include "nonrecip/errors.hpp"

namespace nonrecip {

std::string to_string(FieldMode mode) {
    switch (mode) {
        case FieldMode::a1: return "a1";
        case FieldMode::a2: return "a2";
        case FieldMode::b1: return "b1";
        case FieldMode::b2: return "b2";
    }
    return "?";
}

namespace {

std::string alpha1_label(int n_plus, int n_x) {
    if (n_x == 0) {
        if (n_plus == 1) return "+";
        if (n_plus == -1) return "-";
        return n_plus > 0 ? "+" + std::to_string(n_plus) : std::to_string(n_plus);
    }
    // 2X-family labels carry the X multiple first, then the omega_plus sign.
    return std::to_string(n_x) + "X" + (n_plus > 0 ? ",+" : ",-");
}

std::string alpha2_label(int n_plus, int n_x) {
    if (n_plus == 0) {
        if (n_x == 1) return "X";
        if (n_x == -1) return "-X";
        return std::to_string(n_x) + "X";
    }
    const std::string x = n_x > 0 ? "X" : "-X";
    return x + (n_plus > 0 ? ",+" + std::to_string(n_plus) : "," + std::to_string(n_plus));
}

}  // namespace

std::string symbol(const HarmonicKey& key) {
    switch (key.mode) {
        case FieldMode::a1:
            return "alpha(1," + alpha1_label(key.n_plus, key.n_x) + ")^(" +
                   std::to_string(key.order) + ")";
        case FieldMode::a2:
            return "alpha(2," + alpha2_label(key.n_plus, key.n_x) + ")^(" +
                   std::to_string(key.order) + ")";
        case FieldMode::b1:
        case FieldMode::b2: {
            const int j = key.mode == FieldMode::b1 ? 1 : 2;
            std::string label = "dc";
            if (key.n_plus != 0) {
                label = (key.n_plus > 0 ? "+" : "") + std::to_string(key.n_plus);
            } else if (key.n_x != 0) {
                label = (key.n_x > 0 ? "+" : "") + std::to_string(key.n_x) + "X";
            }
            return "beta(" + std::to_string(j) + "," + label + ")^(" +
                   std::to_string(key.order) + ")";
        }
    }
    return "?";
}

Complex HarmonicCatalog::at(const HarmonicKey& key) const {
    const auto it = entries.find(key);
    if (it == entries.end()) {
        throw IncompleteCatalogError("missing harmonic catalog entry " + symbol(key));
    }
    return it->second;
}

std::vector<HarmonicKey> HarmonicCatalog::keys() const {
    std::vector<HarmonicKey> out;
    out.reserve(entries.size());
    for (const auto& [key, value] : entries) {
        out.push_back(key);
    }
    return out;
}

HarmonicCatalog perturbative_harmonics(const BareParams& bare, const DriveConfig& drives,
                                       const Susceptibilities& chi) {
    drives.validate();
    const double wp = drives.omega_plus;
    const double wx = drives.omega_x;
    const Complex e1 = drives.drive1();
    const Complex e2 = drives.drive2();
    const Complex vd = drives.rf_drive();

    HarmonicCatalog cat;
    cat.omega_plus = wp;
    cat.omega_x = wx;

    const auto freq = [&](int np, int nx) { return np * wp + nx * wx; };
    const auto put = [&](FieldMode mode, int order, int np, int nx, Complex value) {
        cat.entries[{mode, order, np, nx}] = value;
    };

    // Order 0: the directly driven lines.
    const Complex a1p = -kImag * chi.chi_a1(freq(1, 0)) * e1;
    const Complex a1m = -kImag * chi.chi_a1(freq(-1, 0)) * e2;
    const Complex a2x = kImag * chi.chi_a2(freq(0, 1)) * vd;
    put(FieldMode::a1, 0, 1, 0, a1p);
    put(FieldMode::a1, 0, -1, 0, a1m);
    put(FieldMode::a2, 0, 0, 1, a2x);

    // Order 1: mechanical response to the zeroth-order radiation pressure and
    // electrostatic drives.
    std::array<Complex, 2> bdc{}, b2p{}, b2m{}, b2xp{}, b2xm{};
    for (int j = 1; j <= 2; ++j) {
        const double g1j = bare.g0(1, j);
        const double g2j = bare.g0(2, j);
        const FieldMode mode = j == 1 ? FieldMode::b1 : FieldMode::b2;
        const Complex dc = -kImag * chi.chi_b(j, 0.0) *
                           (g1j * (std::norm(a1p) + std::norm(a1m)) - 2.0 * g2j * std::norm(a2x));
        const Complex p2 = -kImag * chi.chi_b(j, freq(2, 0)) * g1j * a1p * std::conj(a1m);
        const Complex m2 = -kImag * chi.chi_b(j, freq(-2, 0)) * g1j * a1m * std::conj(a1p);
        const Complex p2x = kImag * chi.chi_b(j, freq(0, 2)) * g2j * a2x * a2x;
        const Complex m2x = kImag * chi.chi_b(j, freq(0, -2)) * g2j * std::conj(a2x) * std::conj(a2x);
        bdc[j - 1] = dc;
        b2p[j - 1] = p2;
        b2m[j - 1] = m2;
        b2xp[j - 1] = p2x;
        b2xm[j - 1] = m2x;
        put(mode, 1, 0, 0, dc);
        put(mode, 1, 2, 0, p2);
        put(mode, 1, -2, 0, m2);
        put(mode, 1, 0, 2, p2x);
        put(mode, 1, 0, -2, m2x);
    }

    // Order 2: each harmonic is its own linear response to the order-0 x
    // order-1 products. Sideband sums over j of g0_{l j} * source.
    const auto sum1 = [&](auto&& term) {
        Complex acc = 0.0;
        for (int j = 1; j <= 2; ++j) {
            acc += bare.g0(1, j) * term(j - 1);
        }
        return acc;
    };
    const auto sum2 = [&](auto&& term) {
        Complex acc = 0.0;
        for (int j = 1; j <= 2; ++j) {
            acc += bare.g0(2, j) * term(j - 1);
        }
        return acc;
    };

    // Optical sidebands. (beta + beta^*) components: dc -> 2 Re{bdc},
    // +/-2 omega_plus -> b2(+/-) + conj(b2(-/+)), +/-2 omega_x analogously.
    const auto beta_re_p2 = [&](int i) { return b2p[i] + std::conj(b2m[i]); };
    const auto beta_re_m2 = [&](int i) { return b2m[i] + std::conj(b2p[i]); };
    const auto beta_re_p2x = [&](int i) { return b2xp[i] + std::conj(b2xm[i]); };
    const auto beta_re_m2x = [&](int i) { return b2xm[i] + std::conj(b2xp[i]); };

    put(FieldMode::a1, 2, 1, 0,
        -kImag * chi.chi_a1(freq(1, 0)) *
            sum1([&](int i) { return 2.0 * a1p * bdc[i].real() + a1m * beta_re_p2(i); }));
    put(FieldMode::a1, 2, -1, 0,
        -kImag * chi.chi_a1(freq(-1, 0)) *
            sum1([&](int i) { return 2.0 * a1m * bdc[i].real() + a1p * beta_re_m2(i); }));
    put(FieldMode::a1, 2, 3, 0,
        -kImag * chi.chi_a1(freq(3, 0)) * sum1([&](int i) { return a1p * beta_re_p2(i); }));
    put(FieldMode::a1, 2, -3, 0,
        -kImag * chi.chi_a1(freq(-3, 0)) * sum1([&](int i) { return a1m * beta_re_m2(i); }));
    put(FieldMode::a1, 2, 1, 2,
        -kImag * chi.chi_a1(freq(1, 2)) * sum1([&](int i) { return a1p * beta_re_p2x(i); }));
    put(FieldMode::a1, 2, -1, 2,
        -kImag * chi.chi_a1(freq(-1, 2)) * sum1([&](int i) { return a1m * beta_re_p2x(i); }));
    put(FieldMode::a1, 2, 1, -2,
        -kImag * chi.chi_a1(freq(1, -2)) * sum1([&](int i) { return a1p * beta_re_m2x(i); }));
    put(FieldMode::a1, 2, -1, -2,
        -kImag * chi.chi_a1(freq(-1, -2)) * sum1([&](int i) { return a1m * beta_re_m2x(i); }));

    // rf sidebands; sources are (alpha2 + alpha2^*) x (beta + beta^*).
    put(FieldMode::a2, 2, 0, 1,
        2.0 * kImag * chi.chi_a2(freq(0, 1)) *
            sum2([&](int i) { return 2.0 * a2x * bdc[i].real() + std::conj(a2x) * beta_re_p2x(i); }));
    put(FieldMode::a2, 2, 0, -1,
        2.0 * kImag * chi.chi_a2(freq(0, -1)) *
            sum2([&](int i) {
                return 2.0 * std::conj(a2x) * bdc[i].real() + a2x * beta_re_m2x(i);
            }));
    put(FieldMode::a2, 2, 0, 3,
        2.0 * kImag * chi.chi_a2(freq(0, 3)) * sum2([&](int i) { return a2x * beta_re_p2x(i); }));
    put(FieldMode::a2, 2, 0, -3,
        2.0 * kImag * chi.chi_a2(freq(0, -3)) *
            sum2([&](int i) { return std::conj(a2x) * beta_re_m2x(i); }));
    put(FieldMode::a2, 2, 2, 1,
        2.0 * kImag * chi.chi_a2(freq(2, 1)) * sum2([&](int i) { return a2x * beta_re_p2(i); }));
    put(FieldMode::a2, 2, -2, 1,
        2.0 * kImag * chi.chi_a2(freq(-2, 1)) * sum2([&](int i) { return a2x * beta_re_m2(i); }));
    put(FieldMode::a2, 2, 2, -1,
        2.0 * kImag * chi.chi_a2(freq(2, -1)) *
            sum2([&](int i) { return std::conj(a2x) * beta_re_p2(i); }));
    put(FieldMode::a2, 2, -2, -1,
        2.0 * kImag * chi.chi_a2(freq(-2, -1)) *
            sum2([&](int i) { return std::conj(a2x) * beta_re_m2(i); }));

    return cat;
}

FieldAmplitudes amplitude_at_time(const HarmonicCatalog& catalog, double t) {
    FieldAmplitudes out{};
    for (const auto& [key, amplitude] : catalog.entries) {
        const Complex term = amplitude * std::exp(kImag * catalog.frequency(key) * t);
        switch (key.mode) {
            case FieldMode::a1: out.alpha1 += term; break;
            case FieldMode::a2: out.alpha2 += term; break;
            case FieldMode::b1: out.beta1 += term; break;
            case FieldMode::b2: out.beta2 += term; break;
        }
    }
    return out;
}

}  // namespace nonrecip

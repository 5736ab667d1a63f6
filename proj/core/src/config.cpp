#include "nonrecip/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "nonrecip/errors.hpp"

namespace nonrecip {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return {};
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

struct RawEntry {
    std::string value;
    int line = 0;
};

using Section = std::map<std::string, RawEntry>;

struct RawConfig {
    std::map<std::string, Section> sections;

    const Section* find(const std::string& name) const {
        const auto it = sections.find(name);
        return it == sections.end() ? nullptr : &it->second;
    }
};

RawConfig read_raw(std::istream& in) {
    static const std::map<std::string, std::vector<std::string>> kSchema = {
        {"bare",
         {"g0_11", "g0_12", "g0_21", "g0_22", "kappa", "gamma_lc", "gamma_m1", "gamma_m2",
          "omega_1", "omega_2", "nbar_1", "nbar_2", "ntilde_2"}},
        {"drives",
         {"e1", "e2", "p1", "p2", "kappa_in", "omega_l1", "omega_l2", "phi_11", "phi_12",
          "v_mag", "v_ac", "q_zpf", "phi_x", "omega_x", "omega_plus"}},
        {"frame", {"omega_lc", "delta"}},
        {"sweep", {"omega_min", "omega_max", "points"}},
        {"oracle", {"t_end", "tol", "periods", "samples_per_period", "drive_scale", "mode"}},
    };

    RawConfig raw;
    std::string line;
    std::string section;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        const std::string text = trim(line);
        if (text.empty()) {
            continue;
        }
        if (text.front() == '[') {
            if (text.back() != ']') {
                throw ConfigError("line " + std::to_string(number) + ": unterminated section header",
                                  number);
            }
            section = trim(text.substr(1, text.size() - 2));
            if (kSchema.find(section) == kSchema.end()) {
                throw ConfigError(
                    "line " + std::to_string(number) + ": unknown section [" + section + "]",
                    number);
            }
            raw.sections[section];
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(number) + ": expected key = value",
                              number);
        }
        if (section.empty()) {
            throw ConfigError("line " + std::to_string(number) + ": key outside any section",
                              number);
        }
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        const auto& allowed = kSchema.at(section);
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ConfigError("line " + std::to_string(number) + ": unknown key '" + key +
                                  "' in section [" + section + "]",
                              number);
        }
        auto [it, inserted] = raw.sections[section].emplace(key, RawEntry{value, number});
        if (!inserted) {
            throw ConfigError("line " + std::to_string(number) + ": duplicate key '" + key +
                                  "' (first on line " + std::to_string(it->second.line) + ")",
                              number);
        }
    }
    return raw;
}

class SectionReader {
public:
    SectionReader(const RawConfig& raw, std::string name)
        : section_(raw.find(name)), name_(std::move(name)) {}

    bool has(const std::string& key) const {
        return section_ != nullptr && section_->count(key) != 0;
    }

    double number(const std::string& key) const {
        const auto& entry = entry_for(key);
        std::size_t consumed = 0;
        double value = 0.0;
        try {
            value = std::stod(entry.value, &consumed);
        } catch (const std::exception&) {
            consumed = 0;
        }
        if (consumed != entry.value.size() || entry.value.empty()) {
            throw ConfigError("line " + std::to_string(entry.line) + ": '" + entry.value +
                                  "' is not a number",
                              entry.line);
        }
        return value;
    }

    double number_or(const std::string& key, double fallback) const {
        return has(key) ? number(key) : fallback;
    }

    int integer(const std::string& key, int fallback) const {
        if (!has(key)) {
            return fallback;
        }
        const double v = number(key);
        const int n = static_cast<int>(std::lround(v));
        if (std::abs(v - n) > 1e-9) {
            const auto& entry = entry_for(key);
            throw ConfigError("line " + std::to_string(entry.line) + ": expected an integer",
                              entry.line);
        }
        return n;
    }

    std::string text(const std::string& key) const { return entry_for(key).value; }

    int line(const std::string& key) const { return entry_for(key).line; }

    double required(const std::string& key) const {
        if (!has(key)) {
            throw ConfigError("missing required key '" + key + "' in section [" + name_ + "]");
        }
        return number(key);
    }

private:
    const RawEntry& entry_for(const std::string& key) const {
        if (!has(key)) {
            throw ConfigError("missing key '" + key + "' in section [" + name_ + "]");
        }
        return section_->at(key);
    }

    const Section* section_;
    std::string name_;
};

void check_positive(double v, const char* what) {
    if (!(v > 0.0)) {
        throw ConfigError(std::string(what) + " must be positive");
    }
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

DriveConfig RunConfig::drives() const {
    DriveConfig d;
    d.e1 = scenario.e1;
    d.e2 = scenario.e2;
    d.phi_11 = scenario.phi_11;
    d.phi_12 = scenario.phi_12;
    d.v_mag = v_mag;
    d.phi_x = phi_x;
    d.omega_x = scenario.omega_x;
    d.omega_plus = 0.5 * scenario.omega_x;
    return d;
}

bool RunConfig::operator==(const RunConfig& other) const {
    // Derived members (bare/frame/resolution) are functions of these.
    return scenario == other.scenario && v_mag == other.v_mag && phi_x == other.phi_x &&
           sweep == other.sweep && oracle == other.oracle;
}

RunConfig parse_config(std::istream& in) {
    const RawConfig raw = read_raw(in);
    for (const char* required : {"bare", "drives", "frame"}) {
        if (raw.find(required) == nullptr) {
            throw ConfigError(std::string("missing required section [") + required + "]");
        }
    }

    RunConfig cfg;
    const SectionReader bare(raw, "bare");
    cfg.scenario.g0_11 = bare.required("g0_11");
    cfg.scenario.g0_12 = bare.required("g0_12");
    cfg.scenario.g0_21 = bare.required("g0_21");
    cfg.scenario.g0_22 = bare.required("g0_22");
    cfg.scenario.kappa = bare.required("kappa");
    cfg.scenario.gamma_lc = bare.required("gamma_lc");
    cfg.scenario.gamma_m1 = bare.required("gamma_m1");
    cfg.scenario.gamma_m2 = bare.required("gamma_m2");
    cfg.scenario.nbar_1 = bare.number_or("nbar_1", 0.0);
    cfg.scenario.nbar_2 = bare.number_or("nbar_2", 0.0);
    cfg.scenario.ntilde_2 = bare.number_or("ntilde_2", 0.0);
    check_positive(cfg.scenario.kappa, "kappa");
    check_positive(cfg.scenario.gamma_lc, "gamma_lc");
    check_positive(cfg.scenario.gamma_m1, "gamma_m1");
    check_positive(cfg.scenario.gamma_m2, "gamma_m2");
    if (cfg.scenario.nbar_1 < 0 || cfg.scenario.nbar_2 < 0 || cfg.scenario.ntilde_2 < 0) {
        throw ConfigError("thermal occupations must be nonnegative");
    }

    const SectionReader frame(raw, "frame");
    cfg.scenario.target_omega_lc = frame.required("omega_lc");
    cfg.scenario.delta = frame.number_or("delta", 0.0);
    check_positive(cfg.scenario.target_omega_lc, "omega_lc");

    const SectionReader drives(raw, "drives");
    cfg.scenario.omega_x = drives.required("omega_x");
    check_positive(cfg.scenario.omega_x, "omega_x");
    if (drives.has("omega_plus")) {
        const double given = drives.number("omega_plus");
        if (std::abs(given - 0.5 * cfg.scenario.omega_x) >
            1e-9 * cfg.scenario.target_omega_lc) {
            throw ConfigError("line " + std::to_string(drives.line("omega_plus")) +
                                  ": omega_plus conflicts with omega_x / 2",
                              drives.line("omega_plus"));
        }
    }

    // Optical drive amplitudes: direct rate, or laser power converted through
    // the input coupling.
    const double kappa_in = drives.number_or("kappa_in", cfg.scenario.kappa);
    for (int tone = 1; tone <= 2; ++tone) {
        const std::string e_key = tone == 1 ? "e1" : "e2";
        const std::string p_key = tone == 1 ? "p1" : "p2";
        const std::string w_key = tone == 1 ? "omega_l1" : "omega_l2";
        double value = 0.0;
        if (drives.has(e_key) && drives.has(p_key)) {
            throw ConfigError("line " + std::to_string(drives.line(p_key)) + ": give " +
                                  e_key + " or " + p_key + ", not both",
                              drives.line(p_key));
        }
        if (drives.has(p_key)) {
            if (!drives.has(w_key)) {
                throw ConfigError("missing key '" + w_key + "' required by " + p_key +
                                  " in section [drives]");
            }
            value = drive_rate_from_power(drives.number(p_key), kappa_in, drives.number(w_key));
        } else {
            value = drives.number_or(e_key, 0.0);
        }
        if (value < 0.0) {
            throw ConfigError(e_key + " must be nonnegative");
        }
        (tone == 1 ? cfg.scenario.e1 : cfg.scenario.e2) = value;
    }
    cfg.scenario.phi_11 = drives.number_or("phi_11", 0.0);
    cfg.scenario.phi_12 = drives.number_or("phi_12", 0.0);
    cfg.phi_x = drives.number_or("phi_x", 0.0);
    if (drives.has("v_mag") && drives.has("v_ac")) {
        throw ConfigError("line " + std::to_string(drives.line("v_ac")) +
                              ": give v_mag or v_ac, not both",
                          drives.line("v_ac"));
    }
    if (drives.has("v_ac")) {
        if (!drives.has("q_zpf")) {
            throw ConfigError("missing key 'q_zpf' required by v_ac in section [drives]");
        }
        cfg.v_mag = std::abs(rf_drive_rate(drives.number("v_ac"), drives.number("q_zpf"), 0.0));
    } else {
        cfg.v_mag = drives.number_or("v_mag", 0.0);
    }
    if (cfg.v_mag < 0.0) {
        throw ConfigError("v_mag must be nonnegative");
    }

    const SectionReader sweep(raw, "sweep");
    cfg.sweep.omega_min = sweep.number_or("omega_min", cfg.sweep.omega_min);
    cfg.sweep.omega_max = sweep.number_or("omega_max", cfg.sweep.omega_max);
    cfg.sweep.points = sweep.integer("points", cfg.sweep.points);
    if (!(cfg.sweep.omega_max > cfg.sweep.omega_min) || cfg.sweep.points < 2) {
        throw ConfigError("sweep needs omega_max > omega_min and points >= 2");
    }

    const SectionReader oracle(raw, "oracle");
    cfg.oracle.t_end = oracle.number_or("t_end", cfg.oracle.t_end);
    cfg.oracle.tol = oracle.number_or("tol", cfg.oracle.tol);
    cfg.oracle.periods = oracle.integer("periods", cfg.oracle.periods);
    cfg.oracle.samples_per_period =
        oracle.integer("samples_per_period", cfg.oracle.samples_per_period);
    cfg.oracle.drive_scale = oracle.number_or("drive_scale", cfg.oracle.drive_scale);
    if (oracle.has("mode")) {
        const std::string mode = oracle.text("mode");
        if (mode == "paper-literal") {
            cfg.oracle.mode = ChiMode::paper_literal;
        } else if (mode == "drive-shifted") {
            cfg.oracle.mode = ChiMode::drive_shifted;
        } else {
            throw ConfigError("line " + std::to_string(oracle.line("mode")) +
                                  ": mode must be paper-literal or drive-shifted",
                              oracle.line("mode"));
        }
    }

    // Resolve the frame now; this also validates the bare parameter set.
    const auto res = apply_resonance_conditions(cfg.scenario.target_omega_lc,
                                                cfg.scenario.omega_x, cfg.scenario.delta);
    // Mechanical frequencies are fixed by the resonance conditions; explicit
    // values must agree with them.
    for (int j = 1; j <= 2; ++j) {
        const std::string key = j == 1 ? "omega_1" : "omega_2";
        if (!bare.has(key)) {
            continue;
        }
        const double given = bare.number(key);
        const double derived = j == 1 ? res.omega_1 : res.omega_2;
        if (std::abs(given - derived) > 1e-9 * cfg.scenario.target_omega_lc) {
            throw ConfigError("line " + std::to_string(bare.line(key)) + ": " + key + " = " +
                                  format_double(given) +
                                  " conflicts with the resonance conditions (" +
                                  format_double(derived) + ")",
                              bare.line(key));
        }
    }

    BareParams b;
    b.g0_11 = cfg.scenario.g0_11;
    b.g0_12 = cfg.scenario.g0_12;
    b.g0_21 = cfg.scenario.g0_21;
    b.g0_22 = cfg.scenario.g0_22;
    b.kappa = cfg.scenario.kappa;
    b.gamma_lc = cfg.scenario.gamma_lc;
    b.gamma_m1 = cfg.scenario.gamma_m1;
    b.gamma_m2 = cfg.scenario.gamma_m2;
    b.omega_1 = res.omega_1;
    b.omega_2 = res.omega_2;
    b.nbar_1 = cfg.scenario.nbar_1;
    b.nbar_2 = cfg.scenario.nbar_2;
    b.ntilde_2 = cfg.scenario.ntilde_2;
    cfg.resolution = resolve_frame(b, cfg.drives(), res.detuning,
                                   cfg.scenario.target_omega_lc, cfg.scenario.mode);
    b.delta_l = cfg.resolution.delta_l;
    b.omega_lc0 = cfg.resolution.omega_lc0;
    cfg.bare = b;
    cfg.frame = cfg.resolution.frame;
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    return parse_config(in);
}

std::string serialize_config(const RunConfig& config) {
    std::ostringstream out;
    const auto& s = config.scenario;
    out << "[bare]\n";
    out << "g0_11 = " << format_double(s.g0_11) << "\n";
    out << "g0_12 = " << format_double(s.g0_12) << "\n";
    out << "g0_21 = " << format_double(s.g0_21) << "\n";
    out << "g0_22 = " << format_double(s.g0_22) << "\n";
    out << "kappa = " << format_double(s.kappa) << "\n";
    out << "gamma_lc = " << format_double(s.gamma_lc) << "\n";
    out << "gamma_m1 = " << format_double(s.gamma_m1) << "\n";
    out << "gamma_m2 = " << format_double(s.gamma_m2) << "\n";
    out << "nbar_1 = " << format_double(s.nbar_1) << "\n";
    out << "nbar_2 = " << format_double(s.nbar_2) << "\n";
    out << "ntilde_2 = " << format_double(s.ntilde_2) << "\n";
    out << "\n[drives]\n";
    out << "e1 = " << format_double(s.e1) << "\n";
    out << "e2 = " << format_double(s.e2) << "\n";
    out << "phi_11 = " << format_double(s.phi_11) << "\n";
    out << "phi_12 = " << format_double(s.phi_12) << "\n";
    out << "v_mag = " << format_double(config.v_mag) << "\n";
    out << "phi_x = " << format_double(config.phi_x) << "\n";
    out << "omega_x = " << format_double(s.omega_x) << "\n";
    out << "\n[frame]\n";
    out << "omega_lc = " << format_double(s.target_omega_lc) << "\n";
    out << "delta = " << format_double(s.delta) << "\n";
    out << "\n[sweep]\n";
    out << "omega_min = " << format_double(config.sweep.omega_min) << "\n";
    out << "omega_max = " << format_double(config.sweep.omega_max) << "\n";
    out << "points = " << config.sweep.points << "\n";
    out << "\n[oracle]\n";
    out << "t_end = " << format_double(config.oracle.t_end) << "\n";
    out << "tol = " << format_double(config.oracle.tol) << "\n";
    out << "periods = " << config.oracle.periods << "\n";
    out << "samples_per_period = " << config.oracle.samples_per_period << "\n";
    out << "drive_scale = " << format_double(config.oracle.drive_scale) << "\n";
    out << "mode = "
        << (config.oracle.mode == ChiMode::paper_literal ? "paper-literal" : "drive-shifted")
        << "\n";
    return out.str();
}

void write_config(const RunConfig& config, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw Error("cannot write config file: " + path);
    }
    out << serialize_config(config);
}

}  // namespace nonrecip

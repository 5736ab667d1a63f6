#pragma once

#include <iosfwd>
#include <string>

#include "nonrecip/oracle.hpp"
#include "nonrecip/scenario.hpp"

namespace nonrecip {

struct SweepSettings {
    double omega_min = -5.0e4;
    double omega_max = 5.0e4;
    int points = 2001;

    bool operator==(const SweepSettings&) const = default;
};

struct OracleSettings {
    double t_end = 0.0;  // 0: auto, 10 / min(gamma_m)
    double tol = 1e-8;
    int periods = 8;
    int samples_per_period = 256;
    double drive_scale = 1.0;
    ChiMode mode = ChiMode::drive_shifted;

    bool operator==(const OracleSettings&) const = default;
};

/// A fully resolved run configuration: parsed sections plus the derived
/// frame (resonance conditions and dc-shift fixed point applied at load).
struct RunConfig {
    ScenarioConfig scenario;
    double v_mag = 0.0;  // [drives] rf amplitude; 0 until `isolate` writes it
    double phi_x = 0.0;
    SweepSettings sweep;
    OracleSettings oracle;

    // Derived at load time.
    BareParams bare;
    FrameConfig frame;
    FrameResolution resolution;

    DriveConfig drives() const;

    bool operator==(const RunConfig& other) const;
};

/// Parses the sectioned key = value format. Unknown sections or keys, missing
/// required keys, duplicate keys and unit violations raise ConfigError with
/// the offending line number where one exists.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

/// Canonical serialization; re-parses to an identical RunConfig.
std::string serialize_config(const RunConfig& config);
void write_config(const RunConfig& config, const std::string& path);

}  // namespace nonrecip

#pragma once

#include <stdexcept>
#include <string>

namespace nonrecip {

// Base class for all domain errors; the CLI maps these to exit code 1.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParameterError : Error {
    using Error::Error;
};

// Fixed-point frame resolution failed to converge; carries the last residual.
struct FrameResolutionError : Error {
    FrameResolutionError(const std::string& what, double residual)
        : Error(what), last_residual(residual) {}
    double last_residual;
};

// A denominator required by the isolation construction vanishes.
struct SingularConfigurationError : Error {
    using Error::Error;
};

// The isolation conditions have no solution with a real drive amplitude.
struct NoPhysicalDriveError : Error {
    using Error::Error;
};

struct IncompleteCatalogError : Error {
    using Error::Error;
};

// Resonance conditions do not hold to tolerance where they are required.
struct MisconfiguredFrameError : Error {
    using Error::Error;
};

struct IntegratorError : Error {
    using Error::Error;
};

struct ProjectionError : Error {
    using Error::Error;
};

struct InternalConsistencyError : Error {
    using Error::Error;
};

// Malformed config file; the CLI maps this to exit code 2.
struct ConfigError : Error {
    ConfigError(const std::string& what, int line_number = 0)
        : Error(what), line(line_number) {}
    int line;
};

}  // namespace nonrecip

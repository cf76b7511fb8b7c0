#pragma once

#include <stdexcept>
#include <string>

namespace frontlab {

// Error taxonomy used across the library.  Everything derives from
// std::runtime_error so callers can catch broadly; the distinct types let the
// CLI map failures onto exit codes (config -> 1, hypothesis -> 2, numeric -> 3).

// Invalid argument values (inputs outside documented domains).
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Spectral parameter outside the region where an operation is defined.
struct RegionError : std::runtime_error {
  explicit RegionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Candidate function fails an admissibility requirement (e.g. not increasing).
struct AdmissibilityError : std::runtime_error {
  explicit AdmissibilityError(const std::string& msg) : std::runtime_error(msg) {}
};

// Root bracketing / search failures.
struct BracketingError : std::runtime_error {
  explicit BracketingError(const std::string& msg) : std::runtime_error(msg) {}
};

// Integrator blow-ups, singular linear systems, failed refinements.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent run configuration.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A requested output needs a computation that was not performed.
struct DependencyError : std::runtime_error {
  explicit DependencyError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace frontlab

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace tiltbend {

/// Result of one identity family run over `trials` random instances.
/// Failures carry the serialized inputs that produced them (capped; the
/// count keeps the full tally).
struct IdentityReport {
    std::string name;
    int trials = 0;
    double max_residual = 0.0;
    int failure_count = 0;
    std::vector<std::string> failures;
};

struct VerifyReport {
    std::uint64_t seed = 0;
    int trials = 0;
    double tolerance = 0.0;
    std::vector<IdentityReport> identities;

    bool ok() const;
    /// Fixed-order plain-text rendering; byte identical for a fixed seed.
    std::string to_text() const;
    nlohmann::json to_json() const;
};

/// Runs every identity family on a single sequential random stream in a
/// fixed registration order, so the report is deterministic for a fixed
/// seed. A residual above `tolerance` (or an exception inside a trial)
/// records a failure with the reproducer inputs.
VerifyReport run_verify(std::uint64_t seed, int trials, double tolerance = 1e-9);

}  // namespace tiltbend

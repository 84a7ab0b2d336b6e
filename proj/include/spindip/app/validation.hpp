#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace spindip::app {

struct CheckResult {
    int criterion = 0;  ///< acceptance criterion number, 0 for supplementary invariants
    std::string module;
    std::string property;
    bool passed = false;
    double observed = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct SuiteResult {
    std::string name;
    std::string module;
    std::vector<CheckResult> checks;
    double seconds = 0.0;

    bool passed() const;
};

struct ValidationOptions {
    /// Deliberate fault injected to prove the harness catches it ("" = none).
    std::string mutation;
    /// Include the byte-level rerun comparison of scenario artifacts.
    bool determinism = true;
};

struct ValidationReport {
    std::vector<SuiteResult> suites;
    double seconds = 0.0;

    bool passed() const;
    std::vector<const CheckResult*> failures() const;
    nlohmann::json to_json() const;
};

/// Names accepted by ValidationOptions::mutation.
std::vector<std::string> known_mutations();

/// Runs every oracle comparison and invariant suite.
ValidationReport run_validation(const ValidationOptions& options = {});

}  // namespace spindip::app

#pragma once

#include "spindip/app/scenario.hpp"

#include <json.hpp>

#include <filesystem>
#include <vector>

namespace spindip::app {

struct RunResult {
    std::vector<std::filesystem::path> files;  ///< in write order
    nlohmann::json summary;                    ///< same content as the main JSON artifact
    bool passed = true;                        ///< false only for a failing validate scenario
};

/// Executes the scenario and writes its artifacts into out_dir (created if
/// missing). Physics failures propagate as ModelError.
RunResult run_scenario(const Scenario& scenario, const std::filesystem::path& out_dir);

nlohmann::json to_json(const PhysicalParams& params);
nlohmann::json to_json(const FieldConfig& config);

}  // namespace spindip::app

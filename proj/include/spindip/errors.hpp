#pragma once

#include <stdexcept>
#include <string>

namespace spindip {

/// Base class for physics-level failures. Carries the name of the module that
/// raised it so the CLI can report "module: message".
class ModelError : public std::runtime_error {
public:
    ModelError(std::string module, const std::string& what)
        : std::runtime_error(module + ": " + what), module_(std::move(module)) {}

    const std::string& module() const noexcept { return module_; }

private:
    std::string module_;
};

/// Argument outside the domain of a formula (r <= 0, x outside [0,1], ...).
class DomainError : public ModelError {
public:
    using ModelError::ModelError;
};

/// Parameter combination that the model cannot handle (cutoff swallowing the
/// wells, unresolvable splitting, coarse grid, ...).
class ConfigurationError : public ModelError {
public:
    using ModelError::ModelError;
};

}  // namespace spindip

#pragma once

#include "spindip/confinement.hpp"
#include "spindip/hamiltonians.hpp"
#include "spindip/spinops.hpp"
#include "spindip/surfaces.hpp"
#include "spindip/tunneling.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spindip::app {

/// Malformed scenario. `path` names the offending field, e.g. "surface.grid.n1".
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string path, const std::string& message)
        : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

enum class Command { Surface, Cut, Tunneling, Wkb, Measurement, Confinement, Validate };
std::string to_string(Command c);

enum class Constants { Custom, Neutron };

struct NeutronSetup {
    double r_c_cm = 1e-13;
    double r_m_over_r_c = 1e3;
};

struct SurfaceOptions {
    std::vector<Branch> branches{Branch::Minus};
    GridSpec grid;
    bool forces = false;
};

struct CutOptions {
    std::vector<Branch> branches{Branch::Minus};
    CutSpec spec;
};

struct TunnelingOptions {
    Regularization regularization = Regularization::ClampAtCutoff;
    double half_width_over_rm = 5.0;
    std::size_t n_points = 2001;
    std::size_t n_states = 4;
    std::size_t oscillation_samples = 200;  ///< samples over [0, 2 t_swap]
    bool solve = true;                      ///< finite-difference splitting
    bool wkb = true;                        ///< WKB estimate at E = 0
};

struct WkbOptions {
    std::size_t energy_samples = 50;  ///< w(E) table over [0, E_max]
};

struct MeasurementOptions {
    std::optional<double> theta;
    std::optional<double> z1;  ///< alternatively derive theta from a configuration
    std::optional<double> z2;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
};

struct Scenario {
    std::string name;
    Command command = Command::Surface;
    Constants constants = Constants::Custom;
    NeutronSetup neutron;
    PhysicalParams params;  ///< resolved (neutron constants substituted)
    FieldKind field = FieldKind::Case1Everywhere;
    SurfaceOptions surface;
    CutOptions cut;
    TunnelingOptions tunneling;
    WkbOptions wkb;
    MeasurementOptions measurement;
    TrapConfig trap;
    std::filesystem::path source;

    FieldConfig field_config() const { return FieldConfig::from(params, field); }
};

/// Parses scenario text; `origin` is used only in error messages.
Scenario parse_scenario(const std::string& text, const std::string& origin = "<string>");
/// Reads and parses a file. Unreadable files raise SchemaError with path "<file>".
Scenario load_scenario(const std::filesystem::path& file);

}  // namespace spindip::app

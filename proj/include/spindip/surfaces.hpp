#pragma once

#include "spindip/hamiltonians.hpp"
#include "spindip/spinops.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace spindip {

enum class Branch { Minus, Plus };
std::string to_string(Branch b);
Branch branch_from_string(const std::string& name);

enum class Spacing { Uniform, Logarithmic };
std::string to_string(Spacing s);
Spacing spacing_from_string(const std::string& name);

/// Sampling of the near quadrant z1 > 0 > z2, coordinates in units of r0.
/// Axis 1 runs z1_min..z1_max, axis 2 runs -z2_min..-z2_max (both magnitudes).
/// Default: 101 x 101 points over (0, 3] x [-3, 0).
struct GridSpec {
    double z1_min = 3.0 / 101.0;
    double z1_max = 3.0;
    double z2_min = 3.0 / 101.0;  ///< smallest |z2|
    double z2_max = 3.0;          ///< largest |z2|
    std::size_t n1 = 101;
    std::size_t n2 = 101;
    Spacing spacing = Spacing::Uniform;

    /// ConfigurationError unless magnitudes are positive, ordered and n >= 2.
    void validate() const;
    std::vector<double> axis1() const;  ///< z1 / r0, ascending
    std::vector<double> axis2() const;  ///< z2 / r0, from -z2_min down to -z2_max
};

/// Energy and length units of the scaled output. Falls back to (1, 1) when B0 = 0.
struct SurfaceScale {
    double E0 = 1.0;
    double r0 = 1.0;
    bool natural = false;  ///< true when (mu B0, (2 mu / B0)^{1/3}) was used
};
SurfaceScale surface_scale(const PhysicalParams& params);

/// E-/E+ over a (z1, z2) grid, energies in units of E0.
struct PotentialSurface {
    std::vector<double> z1;      ///< units of r0
    std::vector<double> z2;      ///< units of r0
    std::vector<double> values;  ///< row-major, values[i * z2.size() + j] at (z1[i], z2[j])
    SurfaceScale scale;
    PhysicalParams params;
    FieldConfig config;
    Branch branch = Branch::Minus;

    double at(std::size_t i, std::size_t j) const { return values[i * z2.size() + j]; }
};

/// Branch energy at a physical point (no scaling).
double branch_energy(const PhysicalParams& params, const FieldConfig& config, Branch branch,
                     double z1, double z2);

/// Evaluates the grid in parallel (see SPINDIP_MAX_WORKERS).
PotentialSurface sample_surface(const PhysicalParams& params, const FieldConfig& config, Branch branch,
                                const GridSpec& grid = {});

/// Forces -dE/dz1 and -dE/dz2 in units of E0 / r0, on the surface's grid.
struct ForceField {
    std::vector<double> f1;
    std::vector<double> f2;
    std::size_t n1 = 0;
    std::size_t n2 = 0;

    double f1_at(std::size_t i, std::size_t j) const { return f1[i * n2 + j]; }
    double f2_at(std::size_t i, std::size_t j) const { return f2[i * n2 + j]; }
};

/// Central differences inside, one-sided at the edges; step = grid spacing.
/// ConfigurationError if either axis has fewer than 3 points or a value is not finite.
ForceField effective_force(const PotentialSurface& surface);

/// The cut z2 = -z1 (Z = 0, z = 2 z1).
struct Profile {
    std::vector<double> z1;      ///< units of r0; negative entries when mirrored
    std::vector<double> values;  ///< units of E0
    SurfaceScale scale;
    PhysicalParams params;
    FieldConfig config;
    Branch branch = Branch::Minus;
};

struct CutSpec {
    double z1_min = 0.03;  ///< units of r0, > 0
    double z1_max = 3.0;
    std::size_t n = 200;
    Spacing spacing = Spacing::Uniform;
    /// Also sample -z1 (the far quadrant), giving a cut symmetric about the origin.
    bool mirrored = false;

    void validate() const;
};

Profile diagonal_cut(const PhysicalParams& params, const FieldConfig& config, Branch branch,
                     const CutSpec& spec = {});

/// Plot clip for written values, in units of E0.
inline constexpr double kClipLimit = 50.0;

/// CSV with header comment lines; `clip` limits values to +-kClipLimit.
void write_surface_csv(std::ostream& out, const PotentialSurface& surface, bool clip);
void write_profile_csv(std::ostream& out, const Profile& profile, bool clip);
void write_force_csv(std::ostream& out, const PotentialSurface& surface, const ForceField& force);

}  // namespace spindip

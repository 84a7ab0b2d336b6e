#pragma once

#include "spindip/spinops.hpp"

#include <string>
#include <vector>

namespace spindip {

enum class FieldKind {
    Case1Everywhere,          ///< B(z) = B0 + b z over all space
    Case2ConstantRight,       ///< B = B0 on the right particle only
    Case2InhomogeneousRight,  ///< B = B0 + b z on the right particle only
};

std::string to_string(FieldKind kind);
FieldKind field_kind_from_string(const std::string& name);

struct FieldConfig {
    FieldKind kind = FieldKind::Case1Everywhere;
    double B0 = 0.0;
    double b = 0.0;

    /// Field configuration carrying the params' B0 and b.
    static FieldConfig from(const PhysicalParams& params, FieldKind kind);

    /// Throws ConfigurationError if b != 0 for the constant right-side field.
    void validate() const;

    bool is_case1() const { return kind == FieldKind::Case1Everywhere; }
};

/// The {|T>,|S>} block written as 2f I + (coupling, 0, 2f).sigma.
struct TwoLevelBlock {
    double f = 0.0;
    double coupling = 0.0;  ///< off-diagonal <T|H|S>
    double angle = 0.0;     ///< omega (case 1) or theta (case 2), in (-pi/2, pi/2)
    FieldKind which_case = FieldKind::Case1Everywhere;

    /// |beta| = sqrt(coupling^2 + 4 f^2)
    double magnitude() const;
};

struct EigenPair {
    SpinVector state_minus;  ///< |-a>
    SpinVector state_plus;   ///< |+a>
    double e_minus = 0.0;
    double e_plus = 0.0;
};

/// Right-particle field B_T = B(z1) theta(z1 - z2) + B(z2) theta(z2 - z1).
double right_side_field(const FieldConfig& config, double z1, double z2);

/// U + H_I in the coupled basis. Throws DomainError when z1 == z2.
SpinOperator reduced_hamiltonian(const PhysicalParams& params, const FieldConfig& config,
                                 double z1, double z2);

TwoLevelBlock two_level_block(const PhysicalParams& params, const FieldConfig& config,
                              double z1, double z2);

EigenPair eigensystem(const TwoLevelBlock& block);

enum class Regime { SmallR, LargeR };

/// Closed-form limits of the case-1 eigenstructure evaluated at separation r
/// (z = z1 - z2 = r > 0).
struct LimitReport {
    Regime regime = Regime::SmallR;
    double r = 0.0;
    double e_minus = 0.0;
    double e_plus = 0.0;
    SpinVector state_minus;
    SpinVector state_plus;
};

LimitReport asymptotic_limits(const PhysicalParams& params, const FieldConfig& config,
                              Regime regime, double r);

/// Separation where the field and dipole contributions to the case-1 block
/// are equal, (4 mu / b)^{1/4}.
double crossover_separation(const PhysicalParams& params, const FieldConfig& config);

struct LevelEnergies {
    double t_minus1 = 0.0;
    double t_plus1 = 0.0;
    double e_minus = 0.0;
    double e_plus = 0.0;
};

struct LevelCrossingReport {
    bool ok = false;
    LevelEnergies levels;
    /// Case 1: {E(T-1) - E+, E+ - E-, E- - E(T1)}; case 2: {E- - max E(T+-1)}.
    std::vector<double> margins;
    std::string details;
};

LevelCrossingReport level_crossing_check(const PhysicalParams& params, const FieldConfig& config,
                                         double z1, double z2);

/// Lower bound on the adiabatic switching time for the field-induced
/// singlet/triplet mixing: hbar c^2 / ((4f)^2 sqrt(c^2 + 4f^2)).
double adiabatic_min_time(const PhysicalParams& params, const FieldConfig& config,
                          double z1, double z2);

}  // namespace spindip

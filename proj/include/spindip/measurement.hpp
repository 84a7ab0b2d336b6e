#pragma once

#include "spindip/hamiltonians.hpp"
#include "spindip/spinops.hpp"

#include <Eigen/Dense>

#include <cstdint>

namespace spindip {

/// Reduced density matrix of the left half-space in the basis
/// {|+L>_1, |-L>_1, |+L>_2, |-L>_2}.
///
/// Left/right packets are taken as exactly orthogonal. The spatial parts are
/// paired as |S> ~ (L1 R2 + R1 L2)/sqrt2, |T> ~ (L1 R2 - R1 L2)/sqrt2.
struct LeftDensityMatrix {
    Eigen::Matrix4d mat = Eigen::Matrix4d::Zero();

    double trace() const { return mat.trace(); }
    bool is_hermitian(double tol = 1e-12) const;
    bool is_positive_semidefinite(double tol = 1e-12) const;
    /// tr(rho A) for an operator on the same four labels.
    double expectation(const Eigen::Matrix4d& op) const { return (mat * op).trace(); }
};

struct MeasurementPrediction {
    double theta = 0.0;
    double expectation_sz = 0.0;  ///< <S_z1 + S_z2> on the measured side, units of hbar
    double p_plus = 0.5;
    double p_minus = 0.5;
};

enum class RhoSource { Singlet, Triplet, TSCross, MinusA };

/// rho(L, S), rho(L, T), Tr_R |T><S| (equal to Tr_R |S><T|) or rho(L, -a).
/// theta is only read for MinusA.
LeftDensityMatrix rho_left(RhoSource source, double theta = 0.0);
/// The mirror quantity for the right half-space.
LeftDensityMatrix rho_right(RhoSource source, double theta = 0.0);

/// Total spin components restricted to one side, same label ordering.
Eigen::Matrix4d side_sz_operator();
Eigen::Matrix4d side_sx_operator();
Eigen::Matrix4cd side_sy_operator();

MeasurementPrediction protective_expectation(double theta);
MeasurementPrediction protective_expectation_right(double theta);

struct TransverseSpin {
    double sx = 0.0;
    double sy = 0.0;
};
TransverseSpin transverse_expectations(double theta);

/// Concurrence of the spin part of |-a> (identical for |+a>): |cos theta|.
double spin_concurrence(double theta);

/// Product-basis amplitudes of |-a>, {++, +-, -+, --}.
Eigen::Vector4cd minus_a_product_amplitudes(double theta);

struct MeasurementSample {
    std::uint64_t n_trials = 0;
    std::uint64_t n_plus = 0;
    std::uint64_t n_minus = 0;
    double mean = 0.0;            ///< empirical <S_z>, outcomes +-1/2
    double standard_error = 0.0;  ///< sqrt(p+ p-) / sqrt(n) of the predicted distribution
};

/// Repeated ordinary measurements of the left spin on fresh copies of |-a>.
/// Bit-identical for a given seed on every platform.
MeasurementSample standard_measurement_simulation(double theta, std::uint64_t n_trials,
                                                  std::uint64_t seed);

/// Mixing angle at a configuration; this is omega for case 1 and theta for case 2.
double mixing_angle(const PhysicalParams& params, const FieldConfig& config, double z1, double z2);

/// |-a> is protectable when it is non-degenerate: f != 0, the field coupling is
/// nonzero and the level checks report positive margins.
bool protectable(const PhysicalParams& params, const FieldConfig& config, double z1, double z2);

}  // namespace spindip

#pragma once

// Independent reference computations used by the validation suite. None of
// these call the closed forms they are compared against.

#include "spindip/confinement.hpp"
#include "spindip/hamiltonians.hpp"
#include "spindip/spinops.hpp"

#include <Eigen/Dense>

#include <functional>

namespace spindip::oracle {

/// Numeric diagonalisation of the {T, S} block cut out of the full Hamiltonian.
struct BlockEigen {
    double e_minus = 0.0;
    double e_plus = 0.0;
    Eigen::Vector2d v_minus;  ///< (T, S) components, sign arbitrary
    Eigen::Vector2d v_plus;
    double scale = 0.0;       ///< max |eigenvalue|
};
BlockEigen block_eigen(const PhysicalParams& params, const FieldConfig& config, double z1, double z2);

/// Golden-section minimisation on [a, b]; f must be unimodal there.
double golden_section_argmin(const std::function<double(double)>& f, double a, double b, double rel_tol);

/// Argmin of f on (lo, hi): coarse log scan, then golden section around the best node.
double log_scan_argmin(const std::function<double(double)>& f, double lo, double hi, double rel_tol);

/// One-sided action int_0^{r_m} sqrt(m (V(z) - E)) dz for V = 4 mu^2 / max(z, r_c)^3.
double wkb_action_quadrature(const PhysicalParams& params, double r_m, double E);

/// rho(L) built from the 16-dimensional two-particle state with one-particle
/// labels {+L, -L, +R, -R}. The returned 4x4 is ordered {+L_1, -L_1, +L_2, -L_2}.
/// `ket` and `bra` are coupled-basis spin vectors restricted to (T, S) amplitudes.
Eigen::Matrix4d partial_trace_left(const Eigen::Vector2d& ket_ts, const Eigen::Vector2d& bra_ts);

/// |<psi| sigma_y x sigma_y |psi*>| for a pure two-qubit state in the product basis.
double spin_flip_concurrence(const Eigen::Vector4cd& product_amplitudes);

/// Appendix-style expectations of the symmetric (+) / antisymmetric (-) spatial
/// states of two Gaussian packets, integrated numerically on the z axis.
struct GaussianPairQuadrature {
    double norm_R = 0.0;        ///< int |psi_R|^2 d^3x
    double overlap = 0.0;       ///< <psi_R|psi_L>
    double delta_plus = 0.0;    ///< <delta(x1 - x2)>
    double delta_minus = 0.0;
    double com_plus = 0.0;      ///< <P^2 / 2m>
    double com_minus = 0.0;
    double rel_plus = 0.0;      ///< <p^2 / m>
    double rel_minus = 0.0;
    double mean_relative = 0.0; ///< <z1 - z2> in the symmetric state
    double mean_center = 0.0;   ///< <(z1 + z2) / 2> in the symmetric state
};
GaussianPairQuadrature gaussian_pair_quadrature(const TrapConfig& trap);

}  // namespace spindip::oracle

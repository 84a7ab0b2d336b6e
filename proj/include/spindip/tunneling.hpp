#pragma once

#include "spindip/numerics/tridiagonal.hpp"
#include "spindip/spinops.hpp"

#include <functional>
#include <string>
#include <vector>

namespace spindip {

enum class Regularization {
    ClampAtCutoff,  ///< V(|z| < r_c) = V(r_c)
    HardWall,       ///< V(|z| < r_c) = +infinity
};

std::string to_string(Regularization reg);
Regularization regularization_from_string(const std::string& name);

/// Position of the minima of the upper case-1 branch, (240 mu^2 / b^2)^{1/8}.
/// Throws ConfigurationError for b = 0 (no finite minimum).
double well_minimum(const PhysicalParams& params);

/// Gradient that places the minima at r_m.
double gradient_for_minimum(double mu, double r_m);

/// Born-Oppenheimer potential for the relative coordinate: the upper case-1
/// eigenvalue at Z = 0, 2 mu^2/|z|^3 + sqrt(g^2 z^2 + 4 mu^4 / z^6), g = b mu / 2,
/// regularised inside the cutoff.
class BOPotential {
public:
    explicit BOPotential(const PhysicalParams& params,
                         Regularization reg = Regularization::ClampAtCutoff);

    double operator()(double z) const;
    /// The bare expression, valid for z != 0.
    double unregularized(double z) const;

    const PhysicalParams& params() const { return params_; }
    Regularization regularization() const { return reg_; }
    double r_m() const { return r_m_; }
    /// f(r_m), the natural energy unit of the double well.
    double f_at_minimum() const { return f_m_; }

private:
    PhysicalParams params_;
    Regularization reg_;
    double r_m_;
    double f_m_;
};

/// H = p^2 / m + V(z) on the relative coordinate (reduced mass m / 2).
/// length_scale and energy_scale define the internal units of the eigensolve.
struct RelativeMotionProblem {
    std::function<double(double)> potential;
    double mass = 1.0;
    double hbar = 1.0;
    double length_scale = 1.0;
    double energy_scale = 1.0;

    static RelativeMotionProblem from(const BOPotential& v);
};

struct SolverConfig {
    double half_width = 0.0;  ///< L; grid spans (-L, L) with Dirichlet ends
    std::size_t n_points = 2001;
    std::size_t n_states = 4;
};

enum class Parity { Symmetric, Antisymmetric, None };
std::string to_string(Parity p);

/// Real eigenfunction on the uniform grid, normalised so sum psi^2 h = 1.
struct GridWavefunction {
    std::vector<double> z;
    std::vector<double> values;
    double energy = 0.0;
    Parity parity = Parity::None;
    double parity_residual = 0.0;  ///< max|psi(z) -+ psi(-z)| / max|psi|
    double residual = 0.0;         ///< eigen-residual in internal units

    double spacing() const { return z.size() > 1 ? z[1] - z[0] : 0.0; }
    double norm() const;
    /// int_{z > 0} psi^2 dz (half weight on the z = 0 node).
    double right_weight() const;
};

/// Finite-difference operator in internal units: z_phys = x * length_scale,
/// E_phys = e * energy_scale.
struct Discretization {
    std::vector<double> z;  ///< physical grid
    double h_scaled = 0.0;
    double length_scale = 1.0;
    double energy_scale = 1.0;
    numerics::SymmetricTridiagonal hamiltonian;
};

Discretization discretize(const RelativeMotionProblem& problem, const SolverConfig& config);

/// Lowest eigenstates of the 3-point discretisation, parity-classified,
/// energies ascending. Throws ConfigurationError on an unconverged solve.
std::vector<GridWavefunction> solve_eigenstates(const RelativeMotionProblem& problem,
                                                const SolverConfig& config);
/// Same for the double-well potential; requires L >= 3 r_m.
std::vector<GridWavefunction> solve_eigenstates(const BOPotential& potential,
                                                const SolverConfig& config);

struct SplittingResult {
    double E_S = 0.0;
    double E_A = 0.0;
    double Delta = 0.0;                 ///< (E_A - E_S) / 2
    double Delta_matrix_element = 0.0;  ///< -<phi_R|H|phi_L>
    double hbar = 1.0;
    GridWavefunction phi_S, phi_A, phi_R, phi_L;
    std::vector<double> residuals;      ///< eigen-residuals of every solved state
};

/// Parity splitting of the two lowest states; throws ConfigurationError if they
/// are not (Symmetric, Antisymmetric).
SplittingResult splitting(const RelativeMotionProblem& problem, const SolverConfig& config);
SplittingResult splitting(const BOPotential& potential, const SolverConfig& config);

struct Oscillation {
    double p_right = 1.0;
    double p_left = 0.0;
    double t_swap = 0.0;        ///< pi hbar / (2 Delta), infinite when Delta = 0
    bool is_static = false;     ///< Delta = 0: no exchange
};

/// Left/right occupation of a packet started in phi_R.
Oscillation oscillation(const SplittingResult& result, double t);

/// Unnormalised incomplete beta B_x(a, b); DomainError outside x in [0, 1].
double incomplete_beta(double a, double b, double x);

/// One-sided WKB action (momentum x length) through the dipole barrier
/// 4 mu^2/|z|^3 cut off at r_c, from the well at r_m to the origin.
struct WkbBracket {
    double value = 0.0;
    double k = 0.0;    ///< sqrt(m E)
    double k_m = 0.0;  ///< k_m^2 / m = 4 mu^2 / r_m^3
    double k_c = 0.0;  ///< k_c^2 / m = 4 mu^2 / r_c^3
    double rc_over_rm = 0.0;
    std::string warning;  ///< set when r_c / r_m > 0.1
};

/// Top of the simplified barrier at the well, 4 mu^2 / r_m^3.
double wkb_max_energy(const PhysicalParams& params);

/// Closed form -2 r_m sqrt(k_m^2-k^2) - k r_m (k_m/k)^{2/3} B_{5/6,1/2}(k^2/k_m^2)
/// + 3 r_c sqrt(k_c^2-k^2), positive orders of r_c dropped. 0 <= E <= wkb_max_energy.
WkbBracket wkb_exponent_integral(const PhysicalParams& params, double E);

/// w(E) = exp(-4 bracket / hbar).
double tunneling_probability(const PhysicalParams& params, double E);

/// -8 sqrt(m mu^2 / hbar^2) (3/sqrt(r_c) - 2/sqrt(r_m)), the E = 0 exponent.
double tunneling_exponent_at_rest(const PhysicalParams& params);

/// Neutron constants in CGS-Gaussian units.
namespace neutron {
inline constexpr double mass_g = 1.67492750e-24;
inline constexpr double moment = 9.6623651e-24;  ///< |mu_n| in erg/G = erg^{1/2} cm^{3/2}
inline constexpr double hbar_cgs = 1.054571817e-27;

/// Neutron pair with cutoff r_c and gradient chosen so the minima sit at r_m (cm).
PhysicalParams params(double r_c_cm, double r_m_cm);
}  // namespace neutron

}  // namespace spindip

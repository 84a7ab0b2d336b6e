#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace spindip {

using Complex = std::complex<double>;

/// Coupled basis ordering shared by every module: {|T-1>, |T1>, |T>, |S>}.
enum class Basis : int { TMinus1 = 0, TPlus1 = 1, T = 2, S = 3 };

constexpr int index(Basis b) { return static_cast<int>(b); }

/// Dimensional constants of the two-dipole model (Gaussian units, mu^2/r^3 is
/// an energy). b and B0 may be zero; everything else must be positive.
struct PhysicalParams {
    double mu = 1.0;    ///< magnetic moment
    double m = 1.0;     ///< single-particle mass
    double b = 0.0;     ///< field gradient
    double B0 = 0.0;    ///< constant field
    double hbar = 1.0;
    double r_c = 0.01;  ///< short-distance cutoff

    /// Throws ConfigurationError when an invariant is broken.
    void validate() const;

    /// Energy scale mu*B0.
    double E0() const { return mu * B0; }
    /// Length scale where mu*B0 = 2 f(r0); requires B0 > 0.
    double r0() const;
};

/// State in the coupled basis.
struct SpinVector {
    Eigen::Vector4cd amps = Eigen::Vector4cd::Zero();

    static SpinVector basis(Basis b);

    Complex operator[](Basis b) const { return amps(index(b)); }
    double norm() const { return amps.norm(); }
    Complex inner(const SpinVector& other) const { return amps.dot(other.amps); }

    /// Amplitudes in the product basis {|++>, |+->, |-+>, |-->}.
    Eigen::Vector4cd product_amplitudes() const;
};

/// Operator in the coupled basis.
struct SpinOperator {
    Eigen::Matrix4cd mat = Eigen::Matrix4cd::Zero();

    SpinVector apply(const SpinVector& v) const { return {mat * v.amps}; }
    Complex expectation(const SpinVector& v) const { return v.amps.dot(mat * v.amps); }
    bool is_hermitian(double tol = 1e-12) const;
    SpinOperator commutator(const SpinOperator& other) const {
        return {mat * other.mat - other.mat * mat};
    }
};

/// Columns are the coupled basis states written in the product basis
/// {|++>, |+->, |-+>, |-->}.
Eigen::Matrix4cd coupled_from_product();

/// Pauli matrix sigma_k (k = 0,1,2 for x,y,z) on particle 1 or 2, product basis.
Eigen::Matrix4cd pauli_on(int particle, int k);

/// f(r) = mu^2 / r^3. Throws DomainError for r <= 0.
double dipole_coupling(const PhysicalParams& params, double r);

/// The dipole-dipole interaction diag(-2f, -2f, 4f, 0); hyperfine term excluded.
SpinOperator potential_matrix(const PhysicalParams& params, double r);

/// S_z1 + S_z2 in units of hbar: diag(-1, 1, 0, 0).
SpinOperator total_sz_operator();

struct SpinRelation {
    std::string name;
    double deviation = 0.0;  ///< || A|v> - lambda|v> ||
};

struct SpinRelationReport {
    std::vector<SpinRelation> relations;
    double max_deviation = 0.0;
};

/// Builds sigma1.sigma2 and sigma_z1 sigma_z2 from tensor products, moves them
/// to the coupled basis and checks the eigen-relations of every basis state.
SpinRelationReport verify_spin_relations();

}  // namespace spindip

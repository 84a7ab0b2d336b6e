#include "spindip/spinops.hpp"

#include "spindip/errors.hpp"

#include <cmath>

namespace spindip {

namespace {

Eigen::Matrix2cd pauli(int k) {
    Eigen::Matrix2cd s;
    const Complex i(0.0, 1.0);
    switch (k) {
        case 0: s << 0.0, 1.0, 1.0, 0.0; break;
        case 1: s << 0.0, -i, i, 0.0; break;
        default: s << 1.0, 0.0, 0.0, -1.0; break;
    }
    return s;
}

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

}  // namespace

void PhysicalParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw ConfigurationError("spinops", std::string(name) + " must be positive and finite");
    };
    positive(mu, "mu");
    positive(m, "m");
    positive(hbar, "hbar");
    positive(r_c, "r_c");
    if (!(b >= 0.0) || !std::isfinite(b))
        throw ConfigurationError("spinops", "b must be non-negative and finite");
    if (!(B0 >= 0.0) || !std::isfinite(B0))
        throw ConfigurationError("spinops", "B0 must be non-negative and finite");
}

double PhysicalParams::r0() const {
    if (!(B0 > 0.0)) throw ConfigurationError("spinops", "r0 requires B0 > 0");
    return std::cbrt(2.0 * mu / B0);
}

SpinVector SpinVector::basis(Basis b) {
    SpinVector v;
    v.amps(index(b)) = 1.0;
    return v;
}

Eigen::Vector4cd SpinVector::product_amplitudes() const { return coupled_from_product() * amps; }

bool SpinOperator::is_hermitian(double tol) const {
    return (mat - mat.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Eigen::Matrix4cd coupled_from_product() {
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::Matrix4cd c = Eigen::Matrix4cd::Zero();
    // product index: 0 = ++, 1 = +-, 2 = -+, 3 = --
    c(3, index(Basis::TMinus1)) = 1.0;
    c(0, index(Basis::TPlus1)) = 1.0;
    c(1, index(Basis::T)) = s;
    c(2, index(Basis::T)) = s;
    c(1, index(Basis::S)) = s;
    c(2, index(Basis::S)) = -s;
    return c;
}

Eigen::Matrix4cd pauli_on(int particle, int k) {
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    return particle == 1 ? kron(pauli(k), id) : kron(id, pauli(k));
}

double dipole_coupling(const PhysicalParams& params, double r) {
    if (!(r > 0.0)) throw DomainError("spinops", "dipole coupling requires r > 0");
    return params.mu * params.mu / (r * r * r);
}

SpinOperator potential_matrix(const PhysicalParams& params, double r) {
    const double f = dipole_coupling(params, r);
    SpinOperator u;
    u.mat.diagonal() << -2.0 * f, -2.0 * f, 4.0 * f, 0.0;
    return u;
}

SpinOperator total_sz_operator() {
    SpinOperator sz;
    sz.mat.diagonal() << -1.0, 1.0, 0.0, 0.0;
    return sz;
}

SpinRelationReport verify_spin_relations() {
    const Eigen::Matrix4cd c = coupled_from_product();
    Eigen::Matrix4cd dot = Eigen::Matrix4cd::Zero();
    for (int k = 0; k < 3; ++k) dot += pauli_on(1, k) * pauli_on(2, k);
    const Eigen::Matrix4cd zz = pauli_on(1, 2) * pauli_on(2, 2);
    const Eigen::Matrix4cd dot_c = c.adjoint() * dot * c;
    const Eigen::Matrix4cd zz_c = c.adjoint() * zz * c;

    struct Case {
        const char* name;
        const Eigen::Matrix4cd* op;
        Basis state;
        double eigenvalue;
    };
    const Case cases[] = {
        {"sigma1.sigma2 |S> = -3|S>", &dot_c, Basis::S, -3.0},
        {"sigma1.sigma2 |T-1> = |T-1>", &dot_c, Basis::TMinus1, 1.0},
        {"sigma1.sigma2 |T1> = |T1>", &dot_c, Basis::TPlus1, 1.0},
        {"sigma1.sigma2 |T> = |T>", &dot_c, Basis::T, 1.0},
        {"sigma_z1 sigma_z2 |S> = -|S>", &zz_c, Basis::S, -1.0},
        {"sigma_z1 sigma_z2 |T> = -|T>", &zz_c, Basis::T, -1.0},
        {"sigma_z1 sigma_z2 |T1> = |T1>", &zz_c, Basis::TPlus1, 1.0},
        {"sigma_z1 sigma_z2 |T-1> = |T-1>", &zz_c, Basis::TMinus1, 1.0},
    };

    SpinRelationReport report;
    for (const auto& cs : cases) {
        const Eigen::Vector4cd v = SpinVector::basis(cs.state).amps;
        const double dev = ((*cs.op) * v - cs.eigenvalue * v).norm();
        report.relations.push_back({cs.name, dev});
        report.max_deviation = std::max(report.max_deviation, dev);
    }
    return report;
}

}  // namespace spindip

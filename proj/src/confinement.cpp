#include "spindip/confinement.hpp"

#include "spindip/errors.hpp"

#include <cmath>
#include <numbers>

namespace spindip {

void TrapConfig::validate() const {
    if (!(mass > 0.0) || !std::isfinite(mass)) throw ConfigurationError("confinement", "mass must be positive");
    if (!(Omega > 0.0) || !std::isfinite(Omega)) throw ConfigurationError("confinement", "Omega must be positive");
    if (!(hbar > 0.0) || !std::isfinite(hbar)) throw ConfigurationError("confinement", "hbar must be positive");
    if (!(z0 >= 0.0) || !std::isfinite(z0)) throw ConfigurationError("confinement", "z0 must be non-negative");
}

double gaussian_packet(const TrapConfig& trap, Side side, const std::array<double, 3>& x) {
    trap.validate();
    const double xi = trap.xi();
    const double c = side == Side::Right ? 0.5 * trap.z0 : -0.5 * trap.z0;
    const double dz = x[2] - c;
    return std::pow(xi / std::numbers::pi, 0.75) * std::exp(-0.5 * xi * (x[0] * x[0] + x[1] * x[1] + dz * dz));
}

double packet_overlap(const TrapConfig& trap) {
    trap.validate();
    return std::exp(-0.25 * trap.separation_parameter());
}

HyperfineExpectations hyperfine_expectations(const TrapConfig& trap) {
    trap.validate();
    HyperfineExpectations h;
    h.prefactor = 2.0 * std::pow(trap.xi() / (2.0 * std::numbers::pi), 1.5);
    // 1/(1+e^x) written to stay finite for large x
    const double x = 0.5 * trap.separation_parameter();
    h.suppression = std::exp(-x) / (1.0 + std::exp(-x));
    h.delta_S = h.prefactor * h.suppression;
    h.delta_T = 0.0;
    return h;
}

KineticExpectations kinetic_expectations(const TrapConfig& trap) {
    trap.validate();
    if (trap.z0 == 0.0)
        throw DomainError("confinement", "z0 = 0: the antisymmetric state vanishes identically");
    const double xi = trap.xi();
    const double x = trap.separation_parameter();
    const double e = std::exp(-0.5 * x);  // squared overlap
    KineticExpectations k;
    k.uncorrelated = trap.hbar * trap.hbar * xi / (4.0 * trap.mass);
    k.com = 2.0 * k.uncorrelated;
    k.rel_S = k.uncorrelated * (1.0 - x * e / (1.0 + e));
    k.rel_T = k.uncorrelated * (1.0 + x * e / -std::expm1(-0.5 * x));
    k.corrections_negligible = x * e / -std::expm1(-0.5 * x) < 1e-3;
    return k;
}

}  // namespace spindip

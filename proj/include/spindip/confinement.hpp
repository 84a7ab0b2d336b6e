#pragma once

#include <array>

namespace spindip {

/// Two identical particles in harmonic wells at z = +-z0/2.
struct TrapConfig {
    double mass = 1.0;
    double Omega = 1.0;  ///< trap angular frequency
    double z0 = 0.0;     ///< well separation
    double hbar = 1.0;

    /// Throws ConfigurationError unless mass, Omega, hbar > 0 and z0 >= 0.
    void validate() const;
    /// Inverse squared oscillator length m Omega / hbar.
    double xi() const { return mass * Omega / hbar; }
    /// xi z0^2, the separation in oscillator units squared.
    double separation_parameter() const { return xi() * z0 * z0; }
    /// Wells far apart compared with the packet width (xi z0^2 >= 10).
    bool well_separated() const { return separation_parameter() >= 10.0; }
};

enum class Side { Right, Left };

/// Normalised ground-state Gaussian of the well on the given side.
double gaussian_packet(const TrapConfig& trap, Side side, const std::array<double, 3>& x);

/// <psi_R|psi_L> = exp(-xi z0^2 / 4).
double packet_overlap(const TrapConfig& trap);

struct HyperfineExpectations {
    double delta_S = 0.0;          ///< <delta(x1 - x2)> in the spatially symmetric state
    double delta_T = 0.0;          ///< antisymmetric state: identically 0
    double prefactor = 0.0;        ///< 2 (xi / 2 pi)^{3/2}
    double suppression = 0.0;      ///< 1 / (1 + exp(xi z0^2 / 2))
};

/// Contact-term expectations; the singlet value is exponentially suppressed
/// once the packets separate.
HyperfineExpectations hyperfine_expectations(const TrapConfig& trap);

struct KineticExpectations {
    double com = 0.0;     ///< <P^2 / 2m>, identical in both states
    double rel_S = 0.0;   ///< <p^2 / m>, symmetric spatial state
    double rel_T = 0.0;   ///< <p^2 / m>, antisymmetric spatial state
    double uncorrelated = 0.0;  ///< hbar^2 xi / 4m, the far-separated limit of both
    bool corrections_negligible = false;
};

/// Motion along the separation axis. DomainError for z0 = 0 (antisymmetric
/// state vanishes).
KineticExpectations kinetic_expectations(const TrapConfig& trap);

}  // namespace spindip

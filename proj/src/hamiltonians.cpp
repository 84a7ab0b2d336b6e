#include "spindip/hamiltonians.hpp"

#include "spindip/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spindip {

std::string to_string(FieldKind kind) {
    switch (kind) {
        case FieldKind::Case1Everywhere: return "case1";
        case FieldKind::Case2ConstantRight: return "case2_constant";
        case FieldKind::Case2InhomogeneousRight: return "case2_inhomogeneous";
    }
    return "unknown";
}

FieldKind field_kind_from_string(const std::string& name) {
    if (name == "case1") return FieldKind::Case1Everywhere;
    if (name == "case2_constant") return FieldKind::Case2ConstantRight;
    if (name == "case2_inhomogeneous") return FieldKind::Case2InhomogeneousRight;
    throw ConfigurationError("hamiltonians", "unknown field kind '" + name + "'");
}

FieldConfig FieldConfig::from(const PhysicalParams& params, FieldKind kind) {
    FieldConfig c{kind, params.B0, params.b};
    if (kind == FieldKind::Case2ConstantRight) c.b = 0.0;
    return c;
}

void FieldConfig::validate() const {
    if (!std::isfinite(B0) || !std::isfinite(b))
        throw ConfigurationError("hamiltonians", "field parameters must be finite");
    if (kind == FieldKind::Case2ConstantRight && b != 0.0)
        throw ConfigurationError("hamiltonians", "constant right-side field requires b = 0");
}

double TwoLevelBlock::magnitude() const { return std::hypot(coupling, 2.0 * f); }

double right_side_field(const FieldConfig& config, double z1, double z2) {
    // B0 + b Z + b r / 2 with Z + r/2 = max(z1, z2)
    return config.B0 + config.b * std::max(z1, z2);
}

namespace {

void check_geometry(double z1, double z2) {
    if (!std::isfinite(z1) || !std::isfinite(z2))
        throw DomainError("hamiltonians", "positions must be finite");
    if (z1 == z2) throw DomainError("hamiltonians", "coincident particles (z1 == z2)");
}

}  // namespace

SpinOperator reduced_hamiltonian(const PhysicalParams& params, const FieldConfig& config,
                                 double z1, double z2) {
    check_geometry(z1, z2);
    config.validate();
    SpinOperator h = potential_matrix(params, std::abs(z1 - z2));
    const double mu = params.mu;
    const int tm = index(Basis::TMinus1), tp = index(Basis::TPlus1);
    const int t = index(Basis::T), s = index(Basis::S);

    if (config.is_case1()) {
        const double big_z = 0.5 * (z1 + z2);
        const double shift = 2.0 * mu * (config.B0 + config.b * big_z);
        const double g = 0.5 * config.b * mu;
        h.mat(tm, tm) += shift;
        h.mat(tp, tp) -= shift;
        h.mat(t, s) += -g * (z1 - z2);
        h.mat(s, t) += -g * (z1 - z2);
    } else {
        const double mbt = mu * right_side_field(config, z1, z2);
        h.mat(tm, tm) += mbt;
        h.mat(tp, tp) -= mbt;
        h.mat(t, s) += mbt;
        h.mat(s, t) += mbt;
    }
    return h;
}

TwoLevelBlock two_level_block(const PhysicalParams& params, const FieldConfig& config,
                              double z1, double z2) {
    check_geometry(z1, z2);
    config.validate();
    TwoLevelBlock block;
    block.which_case = config.kind;
    block.f = dipole_coupling(params, std::abs(z1 - z2));
    if (config.is_case1()) {
        block.coupling = -0.5 * config.b * params.mu * (z1 - z2);
    } else {
        block.coupling = params.mu * right_side_field(config, z1, z2);
    }
    // f > 0 puts the angle in (-pi/2, pi/2): sin(angle) = coupling / |beta|.
    block.angle = std::atan2(block.coupling, 2.0 * block.f);
    return block;
}

EigenPair eigensystem(const TwoLevelBlock& block) {
    const double mag = block.magnitude();
    EigenPair out;
    out.e_plus = 2.0 * block.f + mag;
    // 2f - |beta| without cancellation
    out.e_minus = -block.coupling * block.coupling / (2.0 * block.f + mag);

    const double half = 0.5 * block.angle;
    const double c = std::cos(half), s = std::sin(half);
    out.state_minus.amps(index(Basis::T)) = -s;
    out.state_minus.amps(index(Basis::S)) = c;
    out.state_plus.amps(index(Basis::T)) = c;
    out.state_plus.amps(index(Basis::S)) = s;
    return out;
}

LimitReport asymptotic_limits(const PhysicalParams& params, const FieldConfig& config,
                              Regime regime, double r) {
    if (!config.is_case1())
        throw ConfigurationError("hamiltonians", "asymptotic limits are defined for case 1");
    if (!(r > 0.0)) throw DomainError("hamiltonians", "asymptotic limits require r > 0");
    LimitReport rep;
    rep.regime = regime;
    rep.r = r;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    if (regime == Regime::LargeR) {
        const double g = 0.5 * config.b * params.mu;
        rep.e_minus = -g * r;
        rep.e_plus = g * r;
        // |+>_1|->_2 and |->_1|+>_2
        rep.state_minus.amps(index(Basis::T)) = inv_sqrt2;
        rep.state_minus.amps(index(Basis::S)) = inv_sqrt2;
        rep.state_plus.amps(index(Basis::T)) = inv_sqrt2;
        rep.state_plus.amps(index(Basis::S)) = -inv_sqrt2;
    } else {
        const double b = config.b;
        rep.e_minus = -b * b * std::pow(r, 5) / 16.0;
        rep.e_plus = 4.0 * params.mu * params.mu / (r * r * r);
        rep.state_minus = SpinVector::basis(Basis::S);
        rep.state_plus = SpinVector::basis(Basis::T);
    }
    return rep;
}

double crossover_separation(const PhysicalParams& params, const FieldConfig& config) {
    if (!(config.b > 0.0)) throw ConfigurationError("hamiltonians", "crossover requires b > 0");
    return std::pow(4.0 * params.mu / config.b, 0.25);
}

LevelCrossingReport level_crossing_check(const PhysicalParams& params, const FieldConfig& config,
                                         double z1, double z2) {
    const SpinOperator h = reduced_hamiltonian(params, config, z1, z2);
    const EigenPair eig = eigensystem(two_level_block(params, config, z1, z2));

    LevelCrossingReport rep;
    rep.levels.t_minus1 = h.mat(index(Basis::TMinus1), index(Basis::TMinus1)).real();
    rep.levels.t_plus1 = h.mat(index(Basis::TPlus1), index(Basis::TPlus1)).real();
    rep.levels.e_minus = eig.e_minus;
    rep.levels.e_plus = eig.e_plus;
    const auto& lv = rep.levels;

    std::ostringstream msg;
    if (config.is_case1()) {
        rep.margins = {lv.t_minus1 - lv.e_plus, lv.e_plus - lv.e_minus, lv.e_minus - lv.t_plus1};
        const char* names[] = {"E(T-1) > E+", "E+ > E-", "E- > E(T1)"};
        for (std::size_t i = 0; i < rep.margins.size(); ++i)
            if (!(rep.margins[i] > 0.0)) msg << names[i] << " violated (margin " << rep.margins[i] << "); ";
    } else {
        // the upper of the two shifted T+-1 levels is the one the lower branch can meet
        const double top = std::max(lv.t_minus1, lv.t_plus1);
        rep.margins = {lv.e_minus - top};
        if (!(rep.margins[0] > 0.0))
            msg << "E- > E(T-1) violated (margin " << rep.margins[0] << "); ";
    }
    rep.details = msg.str();
    rep.ok = rep.details.empty();
    if (rep.ok) rep.details = "no level crossing";
    return rep;
}

double adiabatic_min_time(const PhysicalParams& params, const FieldConfig& config,
                          double z1, double z2) {
    const TwoLevelBlock block = two_level_block(params, config, z1, z2);
    const double c2 = block.coupling * block.coupling;
    const double four_f = 4.0 * block.f;
    return params.hbar * c2 / (four_f * four_f * block.magnitude());
}

}  // namespace spindip

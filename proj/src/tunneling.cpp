#include "spindip/tunneling.hpp"

#include "spindip/errors.hpp"
#include "spindip/numerics/special.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace spindip {

std::string to_string(Regularization reg) {
    return reg == Regularization::ClampAtCutoff ? "clamp" : "hard_wall";
}

Regularization regularization_from_string(const std::string& name) {
    if (name == "clamp") return Regularization::ClampAtCutoff;
    if (name == "hard_wall") return Regularization::HardWall;
    throw ConfigurationError("tunneling", "unknown regularization '" + name + "'");
}

std::string to_string(Parity p) {
    switch (p) {
        case Parity::Symmetric: return "symmetric";
        case Parity::Antisymmetric: return "antisymmetric";
        case Parity::None: return "none";
    }
    return "none";
}

double well_minimum(const PhysicalParams& params) {
    if (!(params.b > 0.0)) throw ConfigurationError("tunneling", "b = 0: the potential has no finite minimum");
    return std::pow(240.0 * params.mu * params.mu / (params.b * params.b), 0.125);
}

double gradient_for_minimum(double mu, double r_m) {
    return std::sqrt(240.0) * mu / std::pow(r_m, 4);
}

BOPotential::BOPotential(const PhysicalParams& params, Regularization reg)
    : params_(params), reg_(reg) {
    params_.validate();
    r_m_ = well_minimum(params_);
    if (params_.r_c >= r_m_) {
        std::ostringstream msg;
        msg << "cutoff r_c = " << params_.r_c << " swallows the wells at r_m = " << r_m_;
        throw ConfigurationError("tunneling", msg.str());
    }
    f_m_ = dipole_coupling(params_, r_m_);
}

double BOPotential::unregularized(double z) const {
    const double a = std::abs(z);
    const double mu2 = params_.mu * params_.mu;
    const double g = 0.5 * params_.b * params_.mu;
    const double a3 = a * a * a;
    const double f2 = 2.0 * mu2 / a3;  // 2 f
    return f2 + std::hypot(g * a, f2);
}

double BOPotential::operator()(double z) const {
    if (std::abs(z) >= params_.r_c) return unregularized(z);
    if (reg_ == Regularization::HardWall) return std::numeric_limits<double>::infinity();
    return unregularized(params_.r_c);
}

RelativeMotionProblem RelativeMotionProblem::from(const BOPotential& v) {
    RelativeMotionProblem p;
    p.potential = [v](double z) { return v(z); };
    p.mass = v.params().m;
    p.hbar = v.params().hbar;
    p.length_scale = v.r_m();
    p.energy_scale = v.f_at_minimum();
    return p;
}

double GridWavefunction::norm() const {
    long double s = 0.0L;
    for (double v : values) s += static_cast<long double>(v) * v;
    return static_cast<double>(s * spacing());
}

double GridWavefunction::right_weight() const {
    long double s = 0.0L;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const long double w2 = static_cast<long double>(values[i]) * values[i];
        if (z[i] > 0.0) s += w2;
        else if (z[i] == 0.0) s += 0.5L * w2;
    }
    return static_cast<double>(s * spacing());
}

Discretization discretize(const RelativeMotionProblem& problem, const SolverConfig& config) {
    if (!problem.potential) throw ConfigurationError("tunneling", "missing potential");
    if (!(config.half_width > 0.0)) throw ConfigurationError("tunneling", "domain half-width must be positive");
    if (config.n_points < 501) throw ConfigurationError("tunneling", "n_points must be at least 501");
    if (config.n_states < 1 || config.n_states > config.n_points)
        throw ConfigurationError("tunneling", "n_states must lie in [1, n_points]");
    if (!(problem.mass > 0.0) || !(problem.hbar > 0.0) || !(problem.length_scale > 0.0) ||
        !(problem.energy_scale > 0.0))
        throw ConfigurationError("tunneling", "mass, hbar and scales must be positive");

    const std::size_t n = config.n_points;
    Discretization d;
    d.length_scale = problem.length_scale;
    d.energy_scale = problem.energy_scale;
    const double h = 2.0 * config.half_width / static_cast<double>(n + 1);
    d.h_scaled = h / problem.length_scale;
    const double kappa = problem.hbar * problem.hbar /
                         (problem.mass * problem.length_scale * problem.length_scale * problem.energy_scale);
    const double kinetic = kappa / (d.h_scaled * d.h_scaled);

    d.z.resize(n);
    // symmetric node placement: z_{n-1-i} = -z_i exactly
    for (std::size_t i = 0; i < n; ++i) {
        const double k = static_cast<double>(i + 1) - 0.5 * static_cast<double>(n + 1);
        d.z[i] = k * h;
    }
    auto& t = d.hamiltonian;
    t.diag.resize(n);
    t.off.assign(n - 1, -kinetic);
    std::vector<bool> wall(n, false);
    double max_finite = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double v = problem.potential(d.z[i]);
        if (std::isnan(v)) throw ConfigurationError("tunneling", "potential returned NaN");
        if (std::isinf(v) && v > 0.0) {
            wall[i] = true;
            continue;
        }
        if (!std::isfinite(v)) throw ConfigurationError("tunneling", "potential is not bounded below");
        t.diag[i] = 2.0 * kinetic + v / problem.energy_scale;
        max_finite = std::max(max_finite, t.diag[i]);
    }
    // wall nodes decouple with a diagonal above every retained eigenvalue
    const double wall_value = max_finite + 4.0 * kinetic;
    for (std::size_t i = 0; i < n; ++i) {
        if (!wall[i]) continue;
        t.diag[i] = wall_value;
        if (i > 0) t.off[i - 1] = 0.0;
        if (i + 1 < n) t.off[i] = 0.0;
    }
    return d;
}

namespace {

constexpr double kParityTolerance = 1e-8;

void classify(GridWavefunction& psi) {
    auto& v = psi.values;
    const std::size_t n = v.size();
    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, std::abs(x));
    double even = 0.0, odd = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        even = std::max(even, std::abs(v[i] - v[n - 1 - i]));
        odd = std::max(odd, std::abs(v[i] + v[n - 1 - i]));
    }
    even /= vmax;
    odd /= vmax;
    if (even <= odd) {
        psi.parity = even <= kParityTolerance ? Parity::Symmetric : Parity::None;
        psi.parity_residual = even;
    } else {
        psi.parity = odd <= kParityTolerance ? Parity::Antisymmetric : Parity::None;
        psi.parity_residual = odd;
    }
    long double sign_probe = 0.0L;
    for (std::size_t i = 0; i < n; ++i)
        if (psi.parity != Parity::Antisymmetric || psi.z[i] > 0.0) sign_probe += v[i];
    if (sign_probe < 0.0L)
        for (auto& x : v) x = -x;
}

}  // namespace

std::vector<GridWavefunction> solve_eigenstates(const RelativeMotionProblem& problem,
                                                const SolverConfig& config) {
    const Discretization d = discretize(problem, config);
    const auto pairs = numerics::lowest_eigenpairs(d.hamiltonian, config.n_states);
    const double tnorm = d.hamiltonian.norm_inf();
    const double h = d.h_scaled * d.length_scale;
    const double amp = 1.0 / std::sqrt(h);

    std::vector<GridWavefunction> out;
    out.reserve(pairs.size());
    std::ostringstream bad;
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        const auto& p = pairs[j];
        if (!(p.residual <= 1e-9 * tnorm)) bad << " state " << j << " residual " << p.residual << ";";
        GridWavefunction psi;
        psi.z = d.z;
        psi.values.resize(p.vector.size());
        for (std::size_t i = 0; i < p.vector.size(); ++i) psi.values[i] = p.vector[i] * amp;
        psi.energy = p.value * d.energy_scale;
        psi.residual = p.residual;
        classify(psi);
        out.push_back(std::move(psi));
    }
    if (!bad.str().empty())
        throw ConfigurationError("tunneling", "eigensolve did not converge (||H|| = " +
                                                  std::to_string(tnorm) + "):" + bad.str());
    return out;
}

std::vector<GridWavefunction> solve_eigenstates(const BOPotential& potential,
                                                const SolverConfig& config) {
    if (config.half_width < 3.0 * potential.r_m())
        throw ConfigurationError("tunneling", "domain half-width must be at least 3 r_m");
    return solve_eigenstates(RelativeMotionProblem::from(potential), config);
}

namespace {

GridWavefunction combine(const GridWavefunction& a, const GridWavefunction& b, double sign) {
    GridWavefunction out;
    out.z = a.z;
    out.values.resize(a.values.size());
    const double s = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < a.values.size(); ++i) out.values[i] = s * (a.values[i] + sign * b.values[i]);
    out.parity = Parity::None;
    out.energy = 0.5 * (a.energy + b.energy);
    return out;
}

double matrix_element(const Discretization& d, const GridWavefunction& bra, const GridWavefunction& ket) {
    const auto& t = d.hamiltonian;
    const std::size_t n = t.size();
    const long double to_unit = std::sqrt(static_cast<long double>(d.h_scaled) * d.length_scale);
    long double acc = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        long double hv = static_cast<long double>(t.diag[i]) * ket.values[i];
        if (i > 0) hv += static_cast<long double>(t.off[i - 1]) * ket.values[i - 1];
        if (i + 1 < n) hv += static_cast<long double>(t.off[i]) * ket.values[i + 1];
        acc += static_cast<long double>(bra.values[i]) * hv;
    }
    return static_cast<double>(acc * to_unit * to_unit) * d.energy_scale;
}

// Impenetrable barrier: the two lowest states are degenerate and any mixture is
// an eigenstate. Rebuild the localised pair and their (anti)symmetric sums.
SplittingResult degenerate_splitting(const Discretization& d, std::vector<GridWavefunction> states, double hbar) {
    const auto& v0 = states[0].values;
    const auto& v1 = states[1].values;
    const auto& z = states[0].z;
    long double g00 = 0.0L, g01 = 0.0L, g11 = 0.0L;
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (z[i] >= 0.0) continue;
        g00 += static_cast<long double>(v0[i]) * v0[i];
        g01 += static_cast<long double>(v0[i]) * v1[i];
        g11 += static_cast<long double>(v1[i]) * v1[i];
    }
    // (a, b) minimising the weight on z < 0
    Eigen::Matrix2d gram;
    gram << static_cast<double>(g00), static_cast<double>(g01), static_cast<double>(g01), static_cast<double>(g11);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(gram);
    const double a = es.eigenvectors()(0, 0), b = es.eigenvectors()(1, 0);

    SplittingResult r;
    r.hbar = hbar;
    for (const auto& s : states) r.residuals.push_back(s.residual);
    GridWavefunction right = states[0];
    long double norm = 0.0L, sum = 0.0L;
    for (std::size_t i = 0; i < z.size(); ++i) {
        right.values[i] = z[i] > 0.0 ? a * v0[i] + b * v1[i] : 0.0;
        norm += static_cast<long double>(right.values[i]) * right.values[i];
        sum += right.values[i];
    }
    const double scale = (sum < 0.0L ? -1.0 : 1.0) / std::sqrt(static_cast<double>(norm * right.spacing()));
    for (auto& x : right.values) x *= scale;
    right.parity = Parity::None;
    right.parity_residual = 1.0;
    right.energy = 0.5 * (states[0].energy + states[1].energy);
    GridWavefunction left = right;
    std::reverse(left.values.begin(), left.values.end());

    r.phi_S = combine(right, left, +1.0);
    r.phi_A = combine(right, left, -1.0);
    r.phi_S.parity = Parity::Symmetric;
    r.phi_A.parity = Parity::Antisymmetric;
    r.phi_S.parity_residual = r.phi_A.parity_residual = 0.0;
    r.E_S = r.E_A = right.energy;
    r.Delta = 0.0;
    r.phi_R = std::move(right);
    r.phi_L = std::move(left);
    r.Delta_matrix_element = -matrix_element(d, r.phi_R, r.phi_L);
    return r;
}

SplittingResult build_splitting(const Discretization& d, std::vector<GridWavefunction> states, double hbar) {
    if (states.size() < 2) throw ConfigurationError("tunneling", "splitting needs two states");
    const double gap = std::abs(states[1].energy - states[0].energy);
    if (gap <= 1e-12 * std::max(std::abs(states[0].energy), d.energy_scale))
        return degenerate_splitting(d, std::move(states), hbar);
    if (states[0].parity != Parity::Symmetric || states[1].parity != Parity::Antisymmetric) {
        std::ostringstream msg;
        msg << "two lowest states are not (symmetric, antisymmetric): got (" << to_string(states[0].parity)
            << ", " << to_string(states[1].parity) << "), parity residuals " << states[0].parity_residual
            << ", " << states[1].parity_residual;
        throw ConfigurationError("tunneling", msg.str());
    }
    SplittingResult r;
    r.hbar = hbar;
    for (const auto& s : states) r.residuals.push_back(s.residual);
    r.phi_S = std::move(states[0]);
    r.phi_A = std::move(states[1]);
    r.E_S = r.phi_S.energy;
    r.E_A = r.phi_A.energy;
    r.Delta = 0.5 * (r.E_A - r.E_S);
    r.phi_R = combine(r.phi_S, r.phi_A, +1.0);
    r.phi_L = combine(r.phi_S, r.phi_A, -1.0);

    r.Delta_matrix_element = -matrix_element(d, r.phi_R, r.phi_L);
    return r;
}

}  // namespace

SplittingResult splitting(const RelativeMotionProblem& problem, const SolverConfig& config) {
    SolverConfig c = config;
    c.n_states = std::max<std::size_t>(c.n_states, 2);
    return build_splitting(discretize(problem, c), solve_eigenstates(problem, c), problem.hbar);
}

SplittingResult splitting(const BOPotential& potential, const SolverConfig& config) {
    SolverConfig c = config;
    c.n_states = std::max<std::size_t>(c.n_states, 2);
    auto states = solve_eigenstates(potential, c);
    const auto problem = RelativeMotionProblem::from(potential);
    return build_splitting(discretize(problem, c), std::move(states), problem.hbar);
}

Oscillation oscillation(const SplittingResult& result, double t) {
    Oscillation o;
    if (result.Delta == 0.0) {
        o.is_static = true;
        o.t_swap = std::numeric_limits<double>::infinity();
        return o;
    }
    const double phase = result.Delta * t / result.hbar;
    const double c = std::cos(phase), s = std::sin(phase);
    o.p_right = c * c;
    o.p_left = s * s;
    o.t_swap = std::numbers::pi * result.hbar / (2.0 * std::abs(result.Delta));
    return o;
}

double incomplete_beta(double a, double b, double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("tunneling", "incomplete beta requires x in [0, 1]");
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("tunneling", "incomplete beta requires a, b > 0");
    return numerics::incomplete_beta_unnormalized(a, b, x);
}

double wkb_max_energy(const PhysicalParams& params) {
    const double r_m = well_minimum(params);
    return 4.0 * params.mu * params.mu / (r_m * r_m * r_m);
}

WkbBracket wkb_exponent_integral(const PhysicalParams& params, double E) {
    params.validate();
    const double r_m = well_minimum(params);
    const double r_c = params.r_c;
    if (r_c >= r_m) throw ConfigurationError("tunneling", "WKB estimate requires r_c < r_m");
    const double e_max = wkb_max_energy(params);
    if (!(E >= 0.0) || E > e_max * (1.0 + 1e-12))
        throw DomainError("tunneling", "WKB energy must lie in [0, 4 mu^2 / r_m^3]");
    E = std::min(E, e_max);

    WkbBracket w;
    const double m = params.m;
    const double mu2 = params.mu * params.mu;
    w.k = std::sqrt(m * E);
    w.k_m = std::sqrt(m * e_max);
    w.k_c = std::sqrt(m * 4.0 * mu2 / (r_c * r_c * r_c));
    w.rc_over_rm = r_c / r_m;
    if (w.rc_over_rm > 0.1) {
        std::ostringstream msg;
        msg << "r_c / r_m = " << w.rc_over_rm << " exceeds 0.1; small-cutoff expansion is unreliable";
        w.warning = msg.str();
    }
    const double k = w.k, km = w.k_m, kc = w.k_c;
    double beta_term = 0.0;
    if (k > 0.0) {
        const double ratio = k / km;
        beta_term = k * r_m * std::pow(km / k, 2.0 / 3.0) * incomplete_beta(5.0 / 6.0, 0.5, ratio * ratio);
    }
    w.value = -2.0 * r_m * std::sqrt(std::max(0.0, km * km - k * k)) - beta_term +
              3.0 * r_c * std::sqrt(kc * kc - k * k);
    return w;
}

double tunneling_probability(const PhysicalParams& params, double E) {
    const WkbBracket w = wkb_exponent_integral(params, E);
    return std::exp(-4.0 * std::abs(w.value) / params.hbar);
}

double tunneling_exponent_at_rest(const PhysicalParams& params) {
    const double r_m = well_minimum(params);
    const double s = std::sqrt(params.m * params.mu * params.mu) / params.hbar;
    return -8.0 * s * (3.0 / std::sqrt(params.r_c) - 2.0 / std::sqrt(r_m));
}

namespace neutron {

PhysicalParams params(double r_c_cm, double r_m_cm) {
    PhysicalParams p;
    p.mu = moment;
    p.m = mass_g;
    p.hbar = hbar_cgs;
    p.r_c = r_c_cm;
    p.B0 = 0.0;
    p.b = gradient_for_minimum(moment, r_m_cm);
    return p;
}

}  // namespace neutron

}  // namespace spindip

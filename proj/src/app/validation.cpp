#include "spindip/app/validation.hpp"

#include "spindip/app/oracles.hpp"
#include "spindip/app/runner.hpp"
#include "spindip/app/scenario.hpp"
#include "spindip/confinement.hpp"
#include "spindip/errors.hpp"
#include "spindip/hamiltonians.hpp"
#include "spindip/measurement.hpp"
#include "spindip/numerics/quadrature.hpp"
#include "spindip/surfaces.hpp"
#include "spindip/tunneling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

namespace spindip::app {

bool SuiteResult::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

bool ValidationReport::passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); });
}

std::vector<const CheckResult*> ValidationReport::failures() const {
    std::vector<const CheckResult*> out;
    for (const auto& s : suites)
        for (const auto& c : s.checks)
            if (!c.passed) out.push_back(&c);
    return out;
}

nlohmann::json ValidationReport::to_json() const {
    auto num = [](double x) -> nlohmann::json {
        if (std::isfinite(x)) return x;
        return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
    };
    nlohmann::json j;
    j["passed"] = passed();
    j["seconds"] = seconds;
    nlohmann::json suites_json = nlohmann::json::array();
    for (const auto& s : suites) {
        nlohmann::json sj = {{"name", s.name}, {"module", s.module}, {"passed", s.passed()}, {"seconds", s.seconds}};
        nlohmann::json checks = nlohmann::json::array();
        for (const auto& c : s.checks) {
            nlohmann::json cj = {{"criterion", c.criterion},   {"module", c.module},
                                 {"property", c.property},     {"passed", c.passed},
                                 {"observed", num(c.observed)}, {"expected", num(c.expected)},
                                 {"tolerance", num(c.tolerance)}};
            if (!c.detail.empty()) cj["detail"] = c.detail;
            checks.push_back(cj);
        }
        sj["checks"] = checks;
        suites_json.push_back(sj);
    }
    j["suites"] = suites_json;
    return j;
}

std::vector<std::string> known_mutations() { return {"eigenvalue"}; }

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

class Suite {
public:
    Suite(std::string name, std::string module, int criterion)
        : criterion_(criterion), start_(Clock::now()) {
        result_.name = std::move(name);
        result_.module = std::move(module);
    }

    /// observed <= tolerance
    void at_most(const std::string& property, double observed, double tolerance, std::string detail = {}) {
        add(property, observed <= tolerance, observed, 0.0, tolerance, std::move(detail));
    }

    /// |observed - expected| <= tolerance * |expected|
    void relative(const std::string& property, double observed, double expected, double tolerance,
                  std::string detail = {}) {
        const double err = std::abs(observed - expected);
        add(property, err <= tolerance * std::abs(expected), observed, expected, tolerance, std::move(detail));
    }

    void holds(const std::string& property, bool ok, std::string detail = {}) {
        add(property, ok, ok ? 1.0 : 0.0, 1.0, 0.0, std::move(detail));
    }

    void runtime_below(double limit) {
        const double t = seconds_since(start_);
        add("runtime below " + std::to_string(static_cast<int>(limit)) + " s", t < limit, t, 0.0, limit, {});
    }

    /// Records an exception thrown by the suite body as a failed check.
    template <typename F>
    void guard(F&& body) {
        try {
            body();
        } catch (const std::exception& e) {
            holds("completes without error", false, e.what());
        }
    }

    SuiteResult finish() {
        result_.seconds = seconds_since(start_);
        return std::move(result_);
    }

private:
    void add(const std::string& property, bool passed, double observed, double expected, double tolerance,
             std::string detail) {
        result_.checks.push_back({criterion_, result_.module, property, passed, observed, expected, tolerance,
                                  std::move(detail)});
    }

    int criterion_;
    Clock::time_point start_;
    SuiteResult result_;
};

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double uniform(double a, double b) { return a + (b - a) * (static_cast<double>(gen_() >> 11) * 0x1.0p-53); }
    double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }

private:
    std::mt19937_64 gen_;
};

// ---------------------------------------------------------------- criterion 1

SuiteResult spin_relations() {
    Suite s("spin-relations", "spinops", 1);
    s.guard([&] {
        const SpinRelationReport r = verify_spin_relations();
        for (const auto& rel : r.relations) s.at_most(rel.name, rel.deviation, 1e-12);
        s.holds("all relations present", r.relations.size() >= 6);
    });
    s.runtime_below(1.0);
    return s.finish();
}

// ---------------------------------------------------------------- criterion 2

SuiteResult eigenstructure(const ValidationOptions& opt) {
    Suite s("eigenstructure", "hamiltonians", 2);
    const bool mutate = opt.mutation == "eigenvalue";
    auto provider = [&](const TwoLevelBlock& b) {
        EigenPair e = eigensystem(b);
        if (mutate) e.e_minus *= 1.0 + 1e-6;
        return e;
    };
    s.guard([&] {
        Rng rng(20240611);
        double worst_e = 0.0, worst_v = 0.0, worst_norm = 0.0;
        std::string worst_at;
        const FieldKind kinds[] = {FieldKind::Case1Everywhere, FieldKind::Case2ConstantRight,
                                   FieldKind::Case2InhomogeneousRight};
        for (int k = 0; k < 1000; ++k) {
            PhysicalParams p;
            p.mu = rng.log_uniform(0.1, 10.0);
            p.b = rng.log_uniform(1e-2, 1e2);
            p.B0 = rng.log_uniform(1e-2, 1e2);
            const double z1 = rng.uniform(0.05, 5.0), z2 = -rng.uniform(0.05, 5.0);
            const FieldConfig cfg = FieldConfig::from(p, kinds[k % 3]);
            const EigenPair an = provider(two_level_block(p, cfg, z1, z2));
            const oracle::BlockEigen num = oracle::block_eigen(p, cfg, z1, z2);
            const double de = std::max(std::abs(an.e_minus - num.e_minus), std::abs(an.e_plus - num.e_plus)) / num.scale;
            auto vec = [](const SpinVector& v) {
                return Eigen::Vector2d(v[Basis::T].real(), v[Basis::S].real());
            };
            auto dist = [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
                return std::min((a - b).norm(), (a + b).norm());
            };
            const double dv = std::max(dist(vec(an.state_minus), num.v_minus), dist(vec(an.state_plus), num.v_plus));
            // nothing leaks outside the {T, S} block
            const double leak = std::max(std::abs(an.state_minus.norm() - 1.0), std::abs(an.state_plus.norm() - 1.0));
            if (de > worst_e) {
                worst_e = de;
                std::ostringstream at;
                at << "case " << to_string(cfg.kind) << " mu=" << p.mu << " b=" << p.b << " B0=" << p.B0
                   << " z1=" << z1 << " z2=" << z2;
                worst_at = at.str();
            }
            worst_v = std::max(worst_v, dv);
            worst_norm = std::max(worst_norm, leak);
        }
        s.at_most("eigenvalues match numeric diagonalisation (relative to block scale)", worst_e, 1e-10, worst_at);
        s.at_most("eigenvectors match numeric diagonalisation", worst_v, 1e-10);
        s.at_most("eigenvectors normalised", worst_norm, 1e-12);
    });
    s.runtime_below(5.0);
    return s.finish();
}

// ---------------------------------------------------------------- criterion 3

SuiteResult asymptotics() {
    Suite s("asymptotics", "hamiltonians", 3);
    s.guard([&] {
        const std::pair<double, double> sets[] = {{1.0, 1.0}, {0.3, 5.0}, {2.0, 0.02}};
        for (auto [mu, b] : sets) {
            PhysicalParams p;
            p.mu = mu;
            p.b = b;
            p.B0 = 1.0;
            const FieldConfig cfg = FieldConfig::from(p, FieldKind::Case1Everywhere);
            const double rx = crossover_separation(p, cfg);
            std::ostringstream tag;
            tag << "mu=" << mu << " b=" << b;
            {
                const double r = 1e-2 * rx;
                const EigenPair e = eigensystem(two_level_block(p, cfg, 0.5 * r, -0.5 * r));
                s.relative("small-r E- ~ -b^2 r^5 / 16 (" + tag.str() + ")", e.e_minus, -b * b * std::pow(r, 5) / 16.0, 1e-3);
            }
            {
                const double r = 1e2 * rx;
                const double g = 0.5 * b * mu;
                const EigenPair e = eigensystem(two_level_block(p, cfg, 0.5 * r, -0.5 * r));
                s.relative("large-r E+ ~ +g r (" + tag.str() + ")", e.e_plus, g * r, 1e-3);
                s.relative("large-r E- ~ -g r (" + tag.str() + ")", e.e_minus, -g * r, 1e-3);
            }
        }
    });
    return s.finish();
}

// ---------------------------------------------------------------- criterion 4

SuiteResult well_minimum_suite() {
    Suite s("well-minimum", "tunneling", 4);
    s.guard([&] {
        for (double b : {0.01, 0.1, 1.0, 10.0}) {
            for (double mu : {1.0, 0.4}) {
                PhysicalParams p;
                p.mu = mu;
                p.b = b;
                p.r_c = 1e-3;
                const BOPotential v(p);
                const double numeric = oracle::log_scan_argmin([&](double z) { return v.unregularized(z); }, 1e-2, 1e3, 1e-12);
                std::ostringstream tag;
                tag << " (b=" << b << ", mu=" << mu << ")";
                s.relative("argmin of V equals r_m" + tag.str(), numeric, well_minimum(p), 1e-6);
                s.relative("V(r_m) = 10 f(r_m)" + tag.str(), v(v.r_m()), 10.0 * dipole_coupling(p, v.r_m()), 1e-10);
            }
        }
    });
    return s.finish();
}

// ---------------------------------------------------------------- criteria 5, 6

PhysicalParams scaled_double_well(double kappa, double r_c) {
    // r_m = 1, f(r_m) = 1, hbar^2 / (m r_m^2 f) = kappa
    PhysicalParams p;
    p.mu = 1.0;
    p.b = gradient_for_minimum(1.0, 1.0);
    p.m = 1.0;
    p.hbar = std::sqrt(kappa);
    p.r_c = r_c;
    return p;
}

SuiteResult double_well() {
    Suite s("double-well", "tunneling", 5);
    s.guard([&] {
        struct Case {
            double kappa, r_c;
            Regularization reg;
        };
        std::vector<Case> cases;
        for (double kappa : {0.1, 0.2, 0.3, 0.5})
            for (double rc : {0.7, 0.8, 0.9}) cases.push_back({kappa, rc, Regularization::ClampAtCutoff});
        int ordered = 0;
        double worst = 0.0;
        std::string worst_at;
        for (const Case& c : cases) {
            const BOPotential v(scaled_double_well(c.kappa, c.r_c), c.reg);
            SolverConfig cfg;
            cfg.half_width = 5.0;
            cfg.n_points = 2001;
            cfg.n_states = 2;
            std::ostringstream tag;
            tag << "kappa=" << c.kappa << " r_c=" << c.r_c << " " << to_string(c.reg);
            try {
                const SplittingResult r = splitting(v, cfg);
                if (r.E_S < r.E_A) ++ordered;
                const double err = std::abs(r.Delta - r.Delta_matrix_element) / std::abs(r.Delta);
                if (err > worst || !std::isfinite(err)) {
                    worst = std::isfinite(err) ? err : 1.0;
                    worst_at = tag.str();
                }
            } catch (const ModelError& e) {
                worst_at = tag.str() + ": " + e.what();
            }
        }
        s.relative("symmetric below antisymmetric in every configuration", ordered, static_cast<double>(cases.size()), 0.0);
        s.at_most("Delta from spectrum equals -<phi_R|H|phi_L>", worst, 1e-8, worst_at);

        for (double kappa : {0.2, 0.5}) {
            const BOPotential wall(scaled_double_well(kappa, 0.8), Regularization::HardWall);
            SolverConfig cfg;
            cfg.half_width = 5.0;
            const SplittingResult r = splitting(wall, cfg);
            s.at_most("hard wall: localised states degenerate, kappa=" + std::to_string(kappa),
                      std::abs(r.Delta_matrix_element) / r.E_S, 1e-12);
            s.holds("hard wall: no exchange, kappa=" + std::to_string(kappa), oscillation(r, 1.0).is_static);
        }

        RelativeMotionProblem ho;
        ho.potential = [](double z) { return 0.5 * z * z; };
        ho.mass = 2.0;  // p^2/m with m = 2 -> unit frequency
        SolverConfig cfg;
        cfg.half_width = 10.0;
        cfg.n_points = 2001;
        cfg.n_states = 4;
        const auto states = solve_eigenstates(ho, cfg);
        for (std::size_t n = 0; n < 4; ++n)
            s.relative("harmonic level n=" + std::to_string(n), states[n].energy, n + 0.5, 1e-4);
    });
    s.runtime_below(30.0);
    return s.finish();
}

SuiteResult oscillation_suite() {
    Suite s("oscillation", "tunneling", 6);
    s.guard([&] {
        const BOPotential v(scaled_double_well(0.2, 0.8));
        SolverConfig cfg;
        cfg.half_width = 5.0;
        const SplittingResult r = splitting(v, cfg);
        const Oscillation o = oscillation(r, 0.0);
        s.relative("t_swap = pi hbar / (2 Delta)", o.t_swap, std::numbers::pi * r.hbar / (2.0 * r.Delta), 1e-15);
        s.at_most("p_right(t_swap)", oscillation(r, o.t_swap).p_right, 1e-10);
        double worst = 0.0;
        for (int k = 0; k < 1000; ++k) {
            const Oscillation ok = oscillation(r, 10.0 * o.t_swap * k / 999.0);
            worst = std::max(worst, std::abs(ok.p_right + ok.p_left - 1.0));
        }
        s.at_most("p_R + p_L = 1 at 1000 times", worst, 1e-12);
        const double right = r.phi_R.right_weight();
        s.holds("phi_R localised on the right", right > 0.5, "right weight " + std::to_string(right));
    });
    return s.finish();
}

// ---------------------------------------------------------------- criterion 7

SuiteResult wkb() {
    Suite s("wkb", "tunneling", 7);
    s.guard([&] {
        const double b56 = incomplete_beta(5.0 / 6.0, 0.5, 1.0);
        s.relative("B(5/6, 1/2) = 2.24 +- 0.01", b56, 2.24, 0.01 / 2.24);
        for (double x : {0.1, 0.5, 0.9}) {
            // t = u^6 removes the endpoint singularity at t = 0
            numerics::QuadratureOptions o;
            o.rel_tol = 1e-13;
            o.abs_tol = 0.0;
            const double q = numerics::integrate(
                [](double u) { return 6.0 * std::pow(u, 4) / std::sqrt(1.0 - std::pow(u, 6)); }, 0.0,
                std::pow(x, 1.0 / 6.0), o).value;
            s.relative("incomplete beta B_x(5/6,1/2) vs quadrature, x=" + std::to_string(x),
                       incomplete_beta(5.0 / 6.0, 0.5, x), q, 1e-10);
        }
        for (double ratio : {1e-2, 1e-3}) {
            PhysicalParams p;
            p.mu = 1.0;
            p.m = 1.0;
            p.b = gradient_for_minimum(1.0, 1.0);
            p.r_c = ratio;
            const double rm = well_minimum(p);
            const double emax = wkb_max_energy(p);
            double worst = 0.0;
            for (double u : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                const double closed = wkb_exponent_integral(p, u * emax).value;
                const double quad = oracle::wkb_action_quadrature(p, rm, u * emax);
                worst = std::max(worst, std::abs(closed - quad) / std::abs(quad));
            }
            s.at_most("closed-form action vs quadrature, r_c/r_m=" + std::to_string(ratio), worst, 0.01);
        }
        const PhysicalParams n = neutron::params(1e-13, 1e-10);
        const double sfac = std::sqrt(n.m * n.mu * n.mu) / n.hbar;
        const double dominant = -24.0 * sfac / std::sqrt(n.r_c);
        s.relative("neutron r_c-dominant exponent ~ -0.94", dominant, -0.94, 0.15);
        const double w = tunneling_probability(n, 0.0);
        s.holds("neutron w in [0.3, 0.5]", w >= 0.3 && w <= 0.5, "w = " + std::to_string(w));
        s.relative("exp(exponent at rest) = w", std::exp(tunneling_exponent_at_rest(n)), w, 1e-12);
    });
    return s.finish();
}

// ---------------------------------------------------------------- criteria 8, 9

SuiteResult density_matrix() {
    Suite s("density-matrix", "measurement", 8);
    s.guard([&] {
        auto maxdiff = [](const Eigen::Matrix4d& a, const Eigen::Matrix4d& b) { return (a - b).cwiseAbs().maxCoeff(); };
        s.at_most("rho(L,S) vs partial trace",
                  maxdiff(rho_left(RhoSource::Singlet).mat, oracle::partial_trace_left({0, 1}, {0, 1})), 1e-12);
        s.at_most("rho(L,T) vs partial trace",
                  maxdiff(rho_left(RhoSource::Triplet).mat, oracle::partial_trace_left({1, 0}, {1, 0})), 1e-12);
        s.at_most("rho(L,TS) vs partial trace",
                  maxdiff(rho_left(RhoSource::TSCross).mat, oracle::partial_trace_left({1, 0}, {0, 1})), 1e-12);
        s.at_most("rho(L,ST) = rho(L,TS)",
                  maxdiff(oracle::partial_trace_left({0, 1}, {1, 0}), oracle::partial_trace_left({1, 0}, {0, 1})), 1e-12);
        Rng rng(77);
        double d_rho = 0.0, d_sz = 0.0, d_tr = 0.0, d_trace = 0.0, d_id = 0.0;
        bool physical = true;
        for (int k = 0; k < 100; ++k) {
            const double th = rng.uniform(-std::numbers::pi, std::numbers::pi);
            const Eigen::Vector2d ket(-std::sin(0.5 * th), std::cos(0.5 * th));
            const LeftDensityMatrix rho = rho_left(RhoSource::MinusA, th);
            d_rho = std::max(d_rho, maxdiff(rho.mat, oracle::partial_trace_left(ket, ket)));
            d_sz = std::max(d_sz, std::abs(rho.expectation(side_sz_operator()) + 0.5 * std::sin(th)));
            const TransverseSpin t = transverse_expectations(th);
            d_tr = std::max({d_tr, std::abs(t.sx), std::abs(t.sy)});
            d_trace = std::max(d_trace, std::abs(rho.trace() - 1.0));
            d_id = std::max(d_id, maxdiff(rho.mat, rho_left(RhoSource::Singlet).mat -
                                                       std::sin(th) * oracle::partial_trace_left({1, 0}, {0, 1})));
            physical = physical && rho.is_hermitian() && rho.is_positive_semidefinite();
        }
        s.at_most("rho(L,-a) closed form vs partial trace (100 random theta)", d_rho, 1e-12);
        s.at_most("rho(L,-a) = rho(L,S) - sin(theta) rho(L,TS)", d_id, 1e-12);
        s.at_most("tr(rho S_z) = -sin(theta)/2", d_sz, 1e-12);
        s.at_most("transverse spin expectations vanish", d_tr, 1e-12);
        s.at_most("unit trace", d_trace, 1e-12);
        s.holds("Hermitian and positive semidefinite", physical);
        const Eigen::Matrix4d half = Eigen::Vector4d(0.0, 0.5, 0.0, 0.5).asDiagonal();
        s.at_most("theta = pi/2 gives diag(0, 1/2, 0, 1/2)", maxdiff(rho_left(RhoSource::MinusA, std::numbers::pi / 2).mat, half), 1e-15);
    });
    return s.finish();
}

SuiteResult concurrence() {
    Suite s("concurrence", "measurement", 9);
    s.guard([&] {
        // product basis {++, +-, -+, --}
        const double r2 = 1.0 / std::sqrt(2.0);
        const Eigen::Vector4cd T(0.0, r2, r2, 0.0), S(0.0, r2, -r2, 0.0);
        auto state = [&](double th) -> Eigen::Vector4cd { return -std::sin(0.5 * th) * T + std::cos(0.5 * th) * S; };
        Rng rng(99);
        double worst = 0.0, worst_abs = 0.0;
        for (int k = 0; k < 100; ++k) {
            const double th = rng.uniform(-std::numbers::pi, std::numbers::pi);
            const double c = spin_concurrence(th);
            worst = std::max(worst, std::abs(c - oracle::spin_flip_concurrence(state(th))));
            worst_abs = std::max(worst_abs, std::abs(c - std::abs(std::cos(th))));
        }
        s.at_most("C(theta) vs spin-flip formula (100 random theta)", worst, 1e-12);
        s.at_most("C(theta) = |cos theta|", worst_abs, 1e-12);
        s.relative("C(0) = 1 (entangled)", spin_concurrence(0.0), 1.0, 1e-12);
        s.at_most("C(pi/2) = 0 (product state)", spin_concurrence(std::numbers::pi / 2), 1e-12);
        s.relative("C(pi/3) = 1/2", spin_concurrence(std::numbers::pi / 3), 0.5, 1e-12);
    });
    return s.finish();
}

// ---------------------------------------------------------------- criterion 10

SuiteResult confinement_suite() {
    Suite s("confinement", "confinement", 10);
    s.guard([&] {
        std::vector<TrapConfig> traps;
        for (double z0 : {0.5, 1.0, 2.0, 3.0}) traps.push_back({1.0, 1.0, z0, 1.0});
        traps.push_back({2.0, 0.7, 1.5, 1.3});
        for (const TrapConfig& t : traps) {
            std::ostringstream tag;
            tag << " (m=" << t.mass << " Omega=" << t.Omega << " z0=" << t.z0 << " hbar=" << t.hbar << ")";
            const oracle::GaussianPairQuadrature q = oracle::gaussian_pair_quadrature(t);
            const KineticExpectations k = kinetic_expectations(t);
            const HyperfineExpectations h = hyperfine_expectations(t);
            s.relative("packet normalised" + tag.str(), q.norm_R, 1.0, 1e-8);
            s.relative("packet overlap" + tag.str(), q.overlap, packet_overlap(t), 1e-8);
            s.relative("<delta>_S" + tag.str(), h.delta_S, q.delta_plus, 1e-6);
            s.at_most("<delta> of antisymmetric state by quadrature" + tag.str(), q.delta_minus / h.prefactor, 1e-12);
            s.holds("<delta>_T = 0 exactly" + tag.str(), h.delta_T == 0.0);
            s.relative("<P^2/2m>_S" + tag.str(), k.com, q.com_plus, 1e-6);
            s.relative("<P^2/2m>_T" + tag.str(), k.com, q.com_minus, 1e-6);
            s.relative("<p^2/m>_S" + tag.str(), k.rel_S, q.rel_plus, 1e-6);
            s.relative("<p^2/m>_T" + tag.str(), k.rel_T, q.rel_minus, 1e-6);
            s.at_most("<z1 - z2> = 0" + tag.str(), std::abs(q.mean_relative), 1e-8);
            s.at_most("<(z1 + z2)/2> = 0" + tag.str(), std::abs(q.mean_center), 1e-8);
        }
        TrapConfig far{1.0, 1.0, std::sqrt(40.0), 1.0};
        s.at_most("suppression at xi z0^2 = 40", hyperfine_expectations(far).suppression, 1e-8);
    });
    return s.finish();
}

// ---------------------------------------------------------------- criterion 11

SuiteResult surface_shapes() {
    Suite s("surface-shapes", "surfaces", 11);
    s.guard([&] {
        PhysicalParams p;
        p.mu = 1.0;
        p.B0 = 1.0;
        p.b = 0.5;
        const FieldConfig c1 = FieldConfig::from(p, FieldKind::Case1Everywhere);
        CutSpec spec;
        spec.z1_min = 0.01;
        spec.z1_max = 3.0;
        spec.n = 400;
        const Profile minus = diagonal_cut(p, c1, Branch::Minus, spec);
        std::size_t violations = 0;
        for (std::size_t i = 1; i < minus.values.size(); ++i)
            if (!(minus.values[i] < minus.values[i - 1])) ++violations;
        s.relative("case-1 minus cut strictly decreasing", static_cast<double>(violations), 0.0, 0.0);

        spec.mirrored = true;
        spec.z1_min = 0.03;
        const Profile plus = diagonal_cut(p, c1, Branch::Plus, spec);
        std::vector<std::size_t> minima;
        for (std::size_t i = 1; i + 1 < plus.values.size(); ++i)
            if (plus.values[i] < plus.values[i - 1] && plus.values[i] < plus.values[i + 1]) minima.push_back(i);
        s.relative("case-1 plus cut has two local minima", static_cast<double>(minima.size()), 2.0, 0.0);
        if (minima.size() == 2) {
            const std::size_t centre = plus.values.size() / 2;  // first positive sample
            bool rising = true;
            for (std::size_t i = minima[0]; i + 1 < centre; ++i) rising = rising && plus.values[i + 1] > plus.values[i];
            for (std::size_t i = centre; i < minima[1]; ++i) rising = rising && plus.values[i] > plus.values[i + 1];
            s.holds("case-1 plus cut rises monotonically into the centre", rising);
            s.holds("case-1 plus cut diverges at the centre (exceeds the plot clip)",
                    plus.values[centre] > kClipLimit && plus.values[centre - 1] > kClipLimit);
            s.relative("minima at z = r_m", 2.0 * plus.z1[minima[1]] * plus.scale.r0, well_minimum(p), 0.02);
        }

        GridSpec grid;
        grid.n1 = grid.n2 = 21;
        const PotentialSurface sym = sample_surface(p, c1, Branch::Plus, grid);
        PhysicalParams p2 = p;
        p2.b = 2.0;
        const PotentialSurface asym =
            sample_surface(p2, FieldConfig::from(p2, FieldKind::Case2InhomogeneousRight), Branch::Plus, grid);
        double d1 = 0.0, d2 = 0.0;
        for (std::size_t i = 0; i < 21; ++i)
            for (std::size_t j = 0; j < 21; ++j) {
                d1 = std::max(d1, std::abs(sym.at(i, j) - sym.at(j, i)) / std::abs(sym.at(i, j)));
                d2 = std::max(d2, std::abs(asym.at(i, j) - asym.at(j, i)) / std::abs(asym.at(i, j)));
            }
        s.at_most("case-1 plus surface symmetric under z1+z2 -> -(z1+z2)", d1, 1e-12);
        s.holds("case-2 inhomogeneous plus surface not symmetric under z1+z2 -> -(z1+z2)", d2 > 1e-3,
                "max relative asymmetry " + std::to_string(d2));
    });
    return s.finish();
}

// Built-in scenarios used by the determinism check; small grids keep it quick.
const char* const kDeterminismScenarios[] = {
    R"(name: det_surface
command: surface
params: {mu: 1, b: 2, B0: 1}
field: {kind: case2_inhomogeneous}
surface: {branch: [minus, plus], forces: true, grid: {n1: 31, n2: 31}}
)",
    R"(name: det_cut
command: cut
params: {mu: 1, b: 0.5, B0: 1}
cut: {branch: [minus, plus], n: 150, mirrored: true}
)",
    R"(name: det_tunneling
command: tunneling
params: {mu: 1, b: 15.491933384829668, m: 1, hbar: 0.4472135954999579, r_c: 0.8}
tunneling: {n_points: 801, oscillation_samples: 50}
)",
    R"(name: det_wkb
command: wkb
constants: neutron
wkb: {energy_samples: 20}
)",
    R"(name: det_measurement
command: measurement
params: {mu: 1, b: 1, B0: 0.5}
field: {kind: case2_inhomogeneous}
measurement: {z1: 1.0, z2: -0.5, trials: 20000, seed: 7}
)",
    R"(name: det_confinement
command: confinement
confinement: {mass: 1, Omega: 1, z0: 2}
)",
};

std::string read_bytes(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

SuiteResult determinism() {
    Suite s("determinism", "cli", 11);
    s.guard([&] {
        namespace fs = std::filesystem;
        std::random_device rd;
        const fs::path base = fs::temp_directory_path() / ("spindip-det-" + std::to_string(rd()));
        std::size_t compared = 0, differing = 0;
        std::string first_diff;
        for (const char* text : kDeterminismScenarios) {
            const Scenario sc = parse_scenario(text, "builtin");
            const RunResult a = run_scenario(sc, base / "a");
            const RunResult b = run_scenario(sc, base / "b");
            if (a.files.size() != b.files.size()) {
                ++differing;
                first_diff = sc.name + ": different file sets";
                continue;
            }
            for (std::size_t i = 0; i < a.files.size(); ++i) {
                ++compared;
                if (read_bytes(a.files[i]) != read_bytes(b.files[i])) {
                    ++differing;
                    if (first_diff.empty()) first_diff = a.files[i].filename().string();
                }
            }
        }
        std::error_code ec;
        fs::remove_all(base, ec);
        s.holds("artifacts compared", compared > 10, std::to_string(compared) + " files");
        s.relative("re-run artifacts byte-identical", static_cast<double>(differing), 0.0, 0.0, first_diff);
    });
    return s.finish();
}

// ---------------------------------------------------------------- supplementary

SuiteResult hamiltonian_invariants() {
    Suite s("hamiltonian-invariants", "hamiltonians", 0);
    s.guard([&] {
        // case-2 switching bound at 2 mu B_T = 3 f
        PhysicalParams p;
        p.mu = 1.0;
        const double r = 1.3, f = 1.0 / (r * r * r);
        p.B0 = 1.5 * f;
        const FieldConfig c2 = FieldConfig::from(p, FieldKind::Case2ConstantRight);
        s.relative("switching bound at 2 mu B_T = 3f is 9/160 hbar/f", adiabatic_min_time(p, c2, 0.5 * r, -0.5 * r),
                   9.0 / 160.0 / f, 1e-12);
        p.B0 = 1.4 * f;
        s.holds("case-2 levels ordered below 2 mu B_T = 3f", level_crossing_check(p, FieldConfig::from(p, FieldKind::Case2ConstantRight), 0.5 * r, -0.5 * r).ok);
        p.B0 = 1.6 * f;
        s.holds("case-2 level check fails above 2 mu B_T = 3f", !level_crossing_check(p, FieldConfig::from(p, FieldKind::Case2ConstantRight), 0.5 * r, -0.5 * r).ok);

        // scaled surfaces depend only on b r0 / B0
        PhysicalParams a, b;
        a.mu = 1.0;
        a.B0 = 2.0;
        a.b = 0.7;
        b.mu = 3.0;
        b.B0 = 2.0;
        b.b = a.b * a.r0() / b.r0();
        GridSpec grid;
        grid.n1 = grid.n2 = 11;
        const auto sa = sample_surface(a, FieldConfig::from(a, FieldKind::Case1Everywhere), Branch::Minus, grid);
        const auto sb = sample_surface(b, FieldConfig::from(b, FieldKind::Case1Everywhere), Branch::Minus, grid);
        double d = 0.0;
        for (std::size_t k = 0; k < sa.values.size(); ++k)
            d = std::max(d, std::abs(sa.values[k] - sb.values[k]) / std::max(1.0, std::abs(sa.values[k])));
        s.at_most("scaled case-1 surface invariant for equal b r0 / B0", d, 1e-12);

        const ForceField force = effective_force(sa);
        double df = 0.0;
        for (std::size_t i = 0; i < force.n1; ++i) df = std::max(df, std::abs(force.f1_at(i, i) + force.f2_at(i, i)));
        s.at_most("case-1 forces on z2 = -z1 satisfy f1 = -f2", df, 1e-9);
    });
    return s.finish();
}

SuiteResult measurement_statistics() {
    Suite s("measurement-statistics", "measurement", 0);
    s.guard([&] {
        const double th = 0.7;
        const MeasurementSample m = standard_measurement_simulation(th, 100000, 12345);
        s.at_most("ensemble mean within 4 sigma of -sin(theta)/2", std::abs(m.mean + 0.5 * std::sin(th)) / m.standard_error, 4.0);
        const MeasurementSample again = standard_measurement_simulation(th, 100000, 12345);
        s.holds("fixed seed reproduces counts", again.n_plus == m.n_plus);
        const MeasurementSample aligned = standard_measurement_simulation(std::numbers::pi / 2, 1000, 1);
        s.holds("theta = pi/2 gives only -1/2", aligned.n_plus == 0);
        const MeasurementPrediction l = protective_expectation(th), r = protective_expectation_right(th);
        s.at_most("left + right expectations cancel", std::abs(l.expectation_sz + r.expectation_sz), 1e-15);
    });
    return s.finish();
}

}  // namespace

ValidationReport run_validation(const ValidationOptions& options) {
    const auto mutations = known_mutations();
    if (!options.mutation.empty() &&
        std::find(mutations.begin(), mutations.end(), options.mutation) == mutations.end())
        throw std::invalid_argument("unknown mutation '" + options.mutation + "'");
    const auto t0 = Clock::now();
    ValidationReport report;
    report.suites.push_back(spin_relations());
    report.suites.push_back(eigenstructure(options));
    report.suites.push_back(asymptotics());
    report.suites.push_back(well_minimum_suite());
    report.suites.push_back(double_well());
    report.suites.push_back(oscillation_suite());
    report.suites.push_back(wkb());
    report.suites.push_back(density_matrix());
    report.suites.push_back(concurrence());
    report.suites.push_back(confinement_suite());
    report.suites.push_back(surface_shapes());
    if (options.determinism) report.suites.push_back(determinism());
    report.suites.push_back(hamiltonian_invariants());
    report.suites.push_back(measurement_statistics());
    report.seconds = seconds_since(t0);
    return report;
}

}  // namespace spindip::app

#include "spindip/errors.hpp"
#include "spindip/tunneling.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace spindip;
using testing::rel_err;

namespace {

PhysicalParams unit_well(double kappa, double r_c) {
    PhysicalParams p;
    p.b = gradient_for_minimum(1.0, 1.0);
    p.hbar = std::sqrt(kappa);
    p.r_c = r_c;
    return p;
}

SolverConfig config(std::size_t n = 2001) {
    SolverConfig c;
    c.half_width = 5.0;
    c.n_points = n;
    return c;
}

}  // namespace

TEST_SUITE("tunneling") {
    TEST_CASE("well minimum and gradient are inverse") {
        for (double rm : {0.1, 1.0, 7.0}) {
            PhysicalParams p;
            p.mu = 0.3;
            p.b = gradient_for_minimum(p.mu, rm);
            CHECK(rel_err(well_minimum(p), rm) < 1e-14);
        }
        PhysicalParams flat;
        CHECK_THROWS_AS(well_minimum(flat), ConfigurationError);
    }

    TEST_CASE("potential value at the minimum is 10 f") {
        const BOPotential v(unit_well(0.2, 0.5));
        CHECK(v.r_m() == doctest::Approx(1.0));
        CHECK(v.f_at_minimum() == doctest::Approx(1.0));
        CHECK(v(1.0) == doctest::Approx(10.0).epsilon(1e-12));
        CHECK(v(-1.0) == v(1.0));
    }

    TEST_CASE("regularisation inside the cutoff") {
        const BOPotential clamp(unit_well(0.2, 0.5));
        CHECK(clamp(0.1) == clamp(0.5));
        CHECK(clamp(0.0) == clamp(0.5));
        const BOPotential wall(unit_well(0.2, 0.5), Regularization::HardWall);
        CHECK(std::isinf(wall(0.1)));
        CHECK(wall(0.6) == clamp(0.6));
        CHECK(regularization_from_string(to_string(Regularization::HardWall)) == Regularization::HardWall);
        CHECK_THROWS_AS(regularization_from_string("soft"), ConfigurationError);
    }

    TEST_CASE("cutoff beyond the wells is rejected") {
        CHECK_THROWS_AS(BOPotential(unit_well(0.2, 1.5)), ConfigurationError);
    }

    TEST_CASE("solver preconditions") {
        const BOPotential v(unit_well(0.2, 0.8));
        CHECK_THROWS_AS(solve_eigenstates(v, config(400)), ConfigurationError);
        SolverConfig narrow = config();
        narrow.half_width = 2.0;
        CHECK_THROWS_AS(solve_eigenstates(v, narrow), ConfigurationError);
    }

    TEST_CASE("grid is mirror-symmetric") {
        RelativeMotionProblem p;
        p.potential = [](double z) { return z * z; };
        const Discretization d = discretize(p, config(1001));
        for (std::size_t i = 0; i < d.z.size(); ++i) CHECK(d.z[i] == -d.z[d.z.size() - 1 - i]);
        CHECK(d.z[500] == 0.0);
    }

    TEST_CASE("harmonic oscillator levels") {
        RelativeMotionProblem ho;
        ho.potential = [](double z) { return 0.5 * z * z; };
        ho.mass = 2.0;
        SolverConfig c;
        c.half_width = 10.0;
        c.n_states = 4;
        const auto s = solve_eigenstates(ho, c);
        for (std::size_t n = 0; n < 4; ++n) {
            CHECK(rel_err(s[n].energy, n + 0.5) < 1e-4);
            CHECK(s[n].parity == (n % 2 == 0 ? Parity::Symmetric : Parity::Antisymmetric));
            CHECK(s[n].norm() == doctest::Approx(1.0).epsilon(1e-12));
        }
    }

    TEST_CASE("double-well splitting: ordering, identity and localisation (property)") {
        testing::Gen g(8);
        for (int k = 0; k < 6; ++k) {
            const double kappa = g.uniform(0.1, 0.5), rc = g.uniform(0.7, 0.9);
            CAPTURE(kappa);
            CAPTURE(rc);
            const SplittingResult r = splitting(BOPotential(unit_well(kappa, rc)), config());
            CHECK(r.E_S < r.E_A);
            CHECK(rel_err(r.Delta_matrix_element, r.Delta) < 1e-8);
            CHECK(r.phi_R.right_weight() > 0.5);
            CHECK(r.phi_L.right_weight() < 0.5);
            CHECK(r.phi_R.norm() == doctest::Approx(1.0).epsilon(1e-10));
        }
    }

    TEST_CASE("splitting shrinks as the barrier widens") {
        double prev = 1e300;
        for (double rc : {0.9, 0.8, 0.7}) {
            const SplittingResult r = splitting(BOPotential(unit_well(0.2, rc)), config());
            CHECK(r.Delta < prev);
            prev = r.Delta;
        }
    }

    TEST_CASE("splitting is converged in the grid") {
        const SplittingResult a = splitting(BOPotential(unit_well(0.2, 0.8)), config(2001));
        const SplittingResult b = splitting(BOPotential(unit_well(0.2, 0.8)), config(4001));
        CHECK(rel_err(a.Delta, b.Delta) < 1e-4);
    }

    TEST_CASE("hard wall gives degenerate localised states") {
        const SplittingResult r = splitting(BOPotential(unit_well(0.3, 0.8), Regularization::HardWall), config());
        CHECK(r.Delta == 0.0);
        CHECK(r.phi_R.right_weight() == doctest::Approx(1.0));
        CHECK(oscillation(r, 123.0).is_static);
        CHECK(oscillation(r, 123.0).p_right == 1.0);
    }

    TEST_CASE("oscillation") {
        const SplittingResult r = splitting(BOPotential(unit_well(0.2, 0.8)), config());
        const Oscillation o = oscillation(r, 0.0);
        CHECK(o.p_right == 1.0);
        CHECK(oscillation(r, o.t_swap).p_right < 1e-10);
        CHECK(oscillation(r, 2.0 * o.t_swap).p_right == doctest::Approx(1.0));
        CHECK(oscillation(r, 0.5 * o.t_swap).p_right == doctest::Approx(0.5));
    }

    TEST_CASE("incomplete beta wrapper") {
        CHECK(std::abs(incomplete_beta(5.0 / 6.0, 0.5, 1.0) - 2.24) < 0.01);
        CHECK_THROWS_AS(incomplete_beta(0.5, 0.5, -0.1), DomainError);
        CHECK_THROWS_AS(incomplete_beta(0.5, 0.5, 1.1), DomainError);
    }

    TEST_CASE("WKB closed form") {
        PhysicalParams p;
        p.b = gradient_for_minimum(1.0, 1.0);
        p.r_c = 1e-3;
        const double emax = wkb_max_energy(p);
        CHECK(emax == doctest::Approx(4.0));
        // E = 0: exact -2 r_m k_m + 3 r_c k_c
        const WkbBracket b0 = wkb_exponent_integral(p, 0.0);
        CHECK(b0.value == doctest::Approx(-2.0 * b0.k_m + 3.0 * p.r_c * b0.k_c));
        CHECK(b0.warning.empty());
        CHECK_THROWS_AS(wkb_exponent_integral(p, -1.0), DomainError);
        CHECK_THROWS_AS(wkb_exponent_integral(p, 1.01 * emax), DomainError);
        // action falls with energy
        double prev = b0.value;
        for (double u : {0.2, 0.5, 0.8, 1.0}) {
            const double v = wkb_exponent_integral(p, u * emax).value;
            CHECK(v < prev);
            prev = v;
        }
        PhysicalParams near = p;
        near.r_c = 0.2;
        CHECK_FALSE(wkb_exponent_integral(near, 0.0).warning.empty());
    }

    TEST_CASE("neutron-scale estimate") {
        const PhysicalParams n = neutron::params(1e-13, 1e-10);
        CHECK(rel_err(well_minimum(n), 1e-10) < 1e-12);
        const double w = tunneling_probability(n, 0.0);
        CHECK(w > 0.3);
        CHECK(w < 0.5);
        CHECK(std::exp(tunneling_exponent_at_rest(n)) == doctest::Approx(w).epsilon(1e-12));
    }
}

#include "spindip/app/oracles.hpp"
#include "spindip/confinement.hpp"
#include "spindip/errors.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace spindip;
using testing::rel_err;

TEST_SUITE("confinement") {
    TEST_CASE("trap parameters") {
        TrapConfig t{2.0, 3.0, 1.0, 0.5};
        CHECK(t.xi() == doctest::Approx(12.0));
        CHECK(t.separation_parameter() == doctest::Approx(12.0));
        CHECK(t.well_separated());
        t.z0 = -1.0;
        CHECK_THROWS_AS(t.validate(), ConfigurationError);
        TrapConfig bad{1.0, 0.0, 1.0, 1.0};
        CHECK_THROWS_AS(bad.validate(), ConfigurationError);
    }

    TEST_CASE("packet shape") {
        const TrapConfig t{1.0, 1.0, 2.0, 1.0};
        const double peak = gaussian_packet(t, Side::Right, {0, 0, 1.0});
        CHECK(peak == doctest::Approx(std::pow(1.0 / std::numbers::pi, 0.75)));
        CHECK(gaussian_packet(t, Side::Right, {0, 0, 1.1}) < peak);
        CHECK(gaussian_packet(t, Side::Left, {0, 0, -1.0}) == doctest::Approx(peak));
        CHECK(packet_overlap(t) == doctest::Approx(std::exp(-1.0)));
    }

    TEST_CASE("hyperfine expectations") {
        const TrapConfig t{1.0, 1.0, 1.0, 1.0};
        const HyperfineExpectations h = hyperfine_expectations(t);
        CHECK(h.delta_T == 0.0);
        CHECK(h.delta_S == doctest::Approx(2.0 * std::pow(1.0 / (2 * std::numbers::pi), 1.5) / (1.0 + std::exp(0.5))));
        TrapConfig far{1.0, 1.0, std::sqrt(40.0), 1.0};
        CHECK(hyperfine_expectations(far).suppression < 1e-8);
        TrapConfig huge{1.0, 1.0, 100.0, 1.0};
        CHECK(hyperfine_expectations(huge).delta_S >= 0.0);
        CHECK(std::isfinite(hyperfine_expectations(huge).delta_S));
        // single well: the symmetric state is the product of identical packets
        TrapConfig same{1.0, 1.0, 0.0, 1.0};
        CHECK(hyperfine_expectations(same).delta_S == doctest::Approx(std::pow(1.0 / (2 * std::numbers::pi), 1.5)));
    }

    TEST_CASE("kinetic expectations") {
        const TrapConfig t{1.0, 1.0, 1.0, 1.0};
        const KineticExpectations k = kinetic_expectations(t);
        CHECK(k.com == doctest::Approx(0.5));
        CHECK(k.rel_T > k.rel_S);
        TrapConfig far{1.0, 1.0, 20.0, 1.0};
        const KineticExpectations kf = kinetic_expectations(far);
        CHECK(rel_err(kf.rel_S, 0.25) < 1e-12);
        CHECK(rel_err(kf.rel_T, 0.25) < 1e-12);
        CHECK(kf.corrections_negligible);
        TrapConfig zero{1.0, 1.0, 0.0, 1.0};
        CHECK_THROWS_AS(kinetic_expectations(zero), DomainError);
    }

    TEST_CASE("rel_T >= rel_S for every separation (property)") {
        testing::Gen g(4);
        for (int k = 0; k < 200; ++k) {
            const TrapConfig t{g.log_uniform(0.1, 10), g.log_uniform(0.1, 10), g.log_uniform(1e-3, 10), 1.0};
            const KineticExpectations e = kinetic_expectations(t);
            CHECK(e.rel_T >= e.rel_S);
            CHECK(e.rel_S > 0.0);
        }
    }

    TEST_CASE("symmetric quantities approach the single-well values as z0 -> 0") {
        const TrapConfig t{1.0, 1.0, 1e-4, 1.0};
        const KineticExpectations k = kinetic_expectations(t);
        // single product Gaussian: <p^2/m> = xi/4m
        CHECK(rel_err(k.rel_S, 0.25) < 1e-6);
        // antisymmetric limit is the first excited relative state: 3 xi / 4m
        CHECK(rel_err(k.rel_T, 0.75) < 1e-6);
    }

    TEST_CASE("closed forms vs quadrature") {
        for (double z0 : {0.7, 2.5}) {
            const TrapConfig t{1.0, 1.0, z0, 1.0};
            const auto q = oracle::gaussian_pair_quadrature(t);
            const auto k = kinetic_expectations(t);
            const auto h = hyperfine_expectations(t);
            CHECK(rel_err(q.com_plus, k.com) < 1e-6);
            CHECK(rel_err(q.com_minus, k.com) < 1e-6);
            CHECK(rel_err(q.rel_plus, k.rel_S) < 1e-6);
            CHECK(rel_err(q.rel_minus, k.rel_T) < 1e-6);
            CHECK(rel_err(q.delta_plus, h.delta_S) < 1e-6);
            CHECK(std::abs(q.mean_relative) < 1e-8);
            CHECK(std::abs(q.mean_center) < 1e-8);
        }
    }
}

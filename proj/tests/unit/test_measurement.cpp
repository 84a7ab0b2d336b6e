#include "spindip/app/oracles.hpp"
#include "spindip/errors.hpp"
#include "spindip/measurement.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace spindip;

TEST_SUITE("measurement") {
    TEST_CASE("unperturbed singlet leaves the left side maximally mixed") {
        const LeftDensityMatrix r = rho_left(RhoSource::MinusA, 0.0);
        CHECK((r.mat - 0.25 * Eigen::Matrix4d::Identity()).norm() < 1e-15);
    }

    TEST_CASE("theta = pi/2") {
        const LeftDensityMatrix r = rho_left(RhoSource::MinusA, std::numbers::pi / 2);
        CHECK(r.mat(0, 0) == doctest::Approx(0.0));
        CHECK(r.mat(1, 1) == doctest::Approx(0.5));
        CHECK(r.mat(3, 3) == doctest::Approx(0.5));
        const MeasurementPrediction p = protective_expectation(std::numbers::pi / 2);
        CHECK(p.p_plus == doctest::Approx(0.0));
        CHECK(p.expectation_sz == doctest::Approx(-0.5));
    }

    TEST_CASE("theta = pi/6") {
        const MeasurementPrediction p = protective_expectation(std::numbers::pi / 6);
        CHECK(p.expectation_sz == doctest::Approx(-0.25));
        CHECK(p.p_plus == doctest::Approx(0.25));
        CHECK(p.p_minus == doctest::Approx(0.75));
    }

    TEST_CASE("closed forms vs partial trace and physical properties (property)") {
        testing::Gen g(17);
        for (int k = 0; k < 100; ++k) {
            const double th = g.uniform(-std::numbers::pi, std::numbers::pi);
            const Eigen::Vector2d ket(-std::sin(th / 2), std::cos(th / 2));
            const LeftDensityMatrix r = rho_left(RhoSource::MinusA, th);
            CHECK((r.mat - oracle::partial_trace_left(ket, ket)).cwiseAbs().maxCoeff() < 1e-12);
            CHECK(r.trace() == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(r.is_hermitian());
            CHECK(r.is_positive_semidefinite());
            const MeasurementPrediction p = protective_expectation(th);
            CHECK(p.p_plus + p.p_minus == doctest::Approx(1.0).epsilon(1e-15));
            CHECK(p.expectation_sz == doctest::Approx(0.5 * (p.p_plus - p.p_minus)).epsilon(1e-15));
            CHECK(std::abs(p.expectation_sz + 0.5 * std::sin(th)) < 1e-12);
            CHECK(std::abs(p.expectation_sz + protective_expectation_right(th).expectation_sz) < 1e-15);
            const TransverseSpin t = transverse_expectations(th);
            CHECK(std::abs(t.sx) <= 1e-12);
            CHECK(std::abs(t.sy) <= 1e-12);
        }
    }

    TEST_CASE("right-side density matrix from the mirrored partial trace") {
        // swapping sides in the oracle is the same as flipping theta
        const double th = 0.9;
        CHECK((rho_right(RhoSource::MinusA, th).mat - rho_left(RhoSource::MinusA, -th).mat).norm() < 1e-15);
    }

    TEST_CASE("component matrices") {
        CHECK((rho_left(RhoSource::Singlet).mat - rho_left(RhoSource::Triplet).mat).norm() == 0.0);
        CHECK((rho_left(RhoSource::Singlet).mat - oracle::partial_trace_left({0, 1}, {0, 1})).norm() < 1e-15);
        CHECK((rho_left(RhoSource::TSCross).mat - oracle::partial_trace_left({1, 0}, {0, 1})).norm() < 1e-15);
    }

    TEST_CASE("concurrence") {
        CHECK(spin_concurrence(0.0) == doctest::Approx(1.0));
        CHECK(spin_concurrence(std::numbers::pi / 2) < 1e-15);
        CHECK(spin_concurrence(std::numbers::pi / 3) == doctest::Approx(0.5));
        testing::Gen g(23);
        for (int k = 0; k < 100; ++k) {
            const double th = g.uniform(-std::numbers::pi, std::numbers::pi);
            CHECK(std::abs(spin_concurrence(th) - oracle::spin_flip_concurrence(minus_a_product_amplitudes(th))) < 1e-12);
            CHECK(std::abs(spin_concurrence(th) - std::abs(std::cos(th))) < 1e-12);
        }
    }

    TEST_CASE("ensemble simulation") {
        const MeasurementSample fair = standard_measurement_simulation(0.0, 1000000, 99);
        CHECK(std::abs(fair.mean) < 3.0 * 0.5 / std::sqrt(1e6));
        const MeasurementSample a = standard_measurement_simulation(1.1, 50000, 5);
        const MeasurementSample b = standard_measurement_simulation(1.1, 50000, 5);
        CHECK(a.n_plus == b.n_plus);
        CHECK(a.mean == b.mean);
        CHECK(std::abs(a.mean + 0.5 * std::sin(1.1)) < 4.0 * a.standard_error);
        CHECK(standard_measurement_simulation(std::numbers::pi / 2, 1000, 3).n_plus == 0);
        CHECK_THROWS_AS(standard_measurement_simulation(0.3, 0, 1), ConfigurationError);
    }

    TEST_CASE("protectability") {
        PhysicalParams p;
        p.B0 = 0.2;
        p.b = 0.1;
        const FieldConfig c = FieldConfig::from(p, FieldKind::Case2InhomogeneousRight);
        CHECK(protectable(p, c, 0.5, -0.5));
        CHECK(mixing_angle(p, c, 0.5, -0.5) == doctest::Approx(std::atan2(0.25, 2.0)));
        // no field: the singlet is an eigenstate but nothing mixes
        PhysicalParams none;
        CHECK_FALSE(protectable(none, FieldConfig::from(none, FieldKind::Case2ConstantRight), 0.5, -0.5));
        // strong field: levels cross
        PhysicalParams strong;
        strong.B0 = 5.0;
        CHECK_FALSE(protectable(strong, FieldConfig::from(strong, FieldKind::Case2ConstantRight), 0.5, -0.5));
    }
}

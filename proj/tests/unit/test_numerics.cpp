#include "spindip/numerics/quadrature.hpp"
#include "spindip/numerics/special.hpp"
#include "spindip/numerics/tridiagonal.hpp"
#include "support.hpp"

#include <doctest.h>

#include <boost/math/special_functions/beta.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace spindip::numerics;

TEST_SUITE("numerics") {
    TEST_CASE("quadrature: polynomials and smooth functions") {
        CHECK(integrate([](double x) { return x * x; }, 0.0, 3.0).value == doctest::Approx(9.0).epsilon(1e-14));
        CHECK(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi).value ==
              doctest::Approx(2.0).epsilon(1e-13));
        const auto g = integrate([](double x) { return std::exp(-x * x); }, -10.0, 10.0);
        CHECK(g.converged);
        CHECK(g.value == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
    }

    TEST_CASE("quadrature: integrable endpoint singularity") {
        QuadratureOptions o;
        o.rel_tol = 1e-10;
        const auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, o);
        CHECK(r.value == doctest::Approx(2.0).epsilon(1e-8));
    }

    TEST_CASE("quadrature: reversed limits change sign") {
        CHECK(integrate([](double x) { return x; }, 1.0, 0.0).value == doctest::Approx(-0.5));
    }

    TEST_CASE("beta function") {
        CHECK(beta(0.5, 0.5) == doctest::Approx(std::numbers::pi).epsilon(1e-14));
        CHECK(beta(5.0 / 6.0, 0.5) == doctest::Approx(boost::math::beta(5.0 / 6.0, 0.5)).epsilon(1e-13));
        CHECK(std::abs(beta(5.0 / 6.0, 0.5) - 2.24) < 0.01);
    }

    TEST_CASE("incomplete beta agrees with boost (property)") {
        testing::Gen g(3);
        for (int k = 0; k < 500; ++k) {
            const double a = g.log_uniform(0.1, 10), b = g.log_uniform(0.1, 10), x = g.uniform(0.0, 1.0);
            const double ref = boost::math::beta(a, b, x);
            CHECK(std::abs(incomplete_beta_unnormalized(a, b, x) - ref) <= 1e-12 * std::max(1.0, ref));
        }
        CHECK(incomplete_beta_unnormalized(2.0, 3.0, 0.0) == 0.0);
        CHECK(incomplete_beta_unnormalized(2.0, 3.0, 1.0) == doctest::Approx(beta(2.0, 3.0)));
        CHECK_THROWS_AS(incomplete_beta_unnormalized(2.0, 3.0, 1.5), std::domain_error);
        CHECK_THROWS_AS(incomplete_beta_unnormalized(-1.0, 3.0, 0.5), std::domain_error);
    }

    TEST_CASE("tridiagonal eigenpairs agree with dense solver") {
        testing::Gen g(42);
        const std::size_t n = 60;
        SymmetricTridiagonal t;
        for (std::size_t i = 0; i < n; ++i) t.diag.push_back(g.uniform(-2, 2));
        for (std::size_t i = 0; i + 1 < n; ++i) t.off.push_back(g.uniform(-1, 1));
        Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
        for (std::size_t i = 0; i < n; ++i) dense(i, i) = t.diag[i];
        for (std::size_t i = 0; i + 1 < n; ++i) dense(i, i + 1) = dense(i + 1, i) = t.off[i];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
        const auto pairs = lowest_eigenpairs(t, 10);
        REQUIRE(pairs.size() == 10);
        for (std::size_t k = 0; k < 10; ++k) {
            CHECK(pairs[k].value == doctest::Approx(es.eigenvalues()(k)).epsilon(1e-12));
            CHECK(pairs[k].residual < 1e-12);
            Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(pairs[k].vector.data(), n);
            CHECK(std::abs(std::abs(v.dot(es.eigenvectors().col(k))) - 1.0) < 1e-10);
        }
    }

    TEST_CASE("Sturm count") {
        SymmetricTridiagonal t{{1.0, 2.0, 3.0}, {0.0, 0.0}};
        CHECK(sturm_count(t, 0.5L) == 0);
        CHECK(sturm_count(t, 1.5L) == 1);
        CHECK(sturm_count(t, 10.0L) == 3);
    }

    TEST_CASE("degenerate decoupled blocks give orthogonal vectors") {
        // two identical uncoupled blocks -> every eigenvalue doubled
        SymmetricTridiagonal t{{2, 2, 2, 5, 2, 2, 2}, {-1, -1, 0, 0, -1, -1}};
        const auto pairs = lowest_eigenpairs(t, 2);
        CHECK(pairs[0].value == doctest::Approx(pairs[1].value));
        double dot = 0.0;
        for (std::size_t i = 0; i < 7; ++i) dot += pairs[0].vector[i] * pairs[1].vector[i];
        CHECK(std::abs(dot) < 1e-10);
        CHECK(pairs[0].residual < 1e-12);
        CHECK(pairs[1].residual < 1e-12);
    }

    TEST_CASE("single-element matrix") {
        SymmetricTridiagonal t{{3.5}, {}};
        const auto pairs = lowest_eigenpairs(t, 1);
        CHECK(pairs[0].value == doctest::Approx(3.5));
        CHECK(std::abs(pairs[0].vector[0]) == doctest::Approx(1.0));
    }
}

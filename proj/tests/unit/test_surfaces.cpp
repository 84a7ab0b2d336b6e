#include "spindip/errors.hpp"
#include "spindip/format.hpp"
#include "spindip/parallel.hpp"
#include "spindip/surfaces.hpp"
#include "support.hpp"

#include <doctest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>

using namespace spindip;

namespace {

PhysicalParams base() {
    PhysicalParams p;
    p.mu = 1.0;
    p.B0 = 1.0;
    p.b = 0.5;
    return p;
}

}  // namespace

TEST_SUITE("surfaces") {
    TEST_CASE("default grid stays in the near quadrant") {
        GridSpec g;
        g.validate();
        const auto a1 = g.axis1(), a2 = g.axis2();
        CHECK(a1.size() == 101);
        CHECK(a1.front() > 0.0);
        CHECK(a1.back() == 3.0);
        CHECK(a2.front() < 0.0);
        CHECK(a2.back() == -3.0);
        GridSpec log = g;
        log.spacing = Spacing::Logarithmic;
        const auto l = log.axis1();
        CHECK(l[1] / l[0] == doctest::Approx(l[2] / l[1]));
    }

    TEST_CASE("grids touching the diagonal or too coarse are rejected") {
        GridSpec g;
        g.z1_min = 0.0;
        CHECK_THROWS_AS(g.validate(), ConfigurationError);
        GridSpec h;
        h.n1 = 1;
        CHECK_THROWS_AS(h.validate(), ConfigurationError);
        GridSpec e;
        e.n1 = e.n2 = 0;
        CHECK_THROWS_AS(sample_surface(base(), FieldConfig::from(base(), FieldKind::Case1Everywhere), Branch::Minus, e),
                        ConfigurationError);
    }

    TEST_CASE("branch gap") {
        GridSpec g;
        g.n1 = g.n2 = 15;
        const PhysicalParams p = base();
        const FieldConfig c = FieldConfig::from(p, FieldKind::Case2InhomogeneousRight);
        const PotentialSurface lo = sample_surface(p, c, Branch::Minus, g), hi = sample_surface(p, c, Branch::Plus, g);
        for (std::size_t i = 0; i < 15; ++i)
            for (std::size_t j = 0; j < 15; ++j) {
                const TwoLevelBlock b = two_level_block(p, c, lo.z1[i] * lo.scale.r0, lo.z2[j] * lo.scale.r0);
                CHECK((hi.at(i, j) - lo.at(i, j)) * lo.scale.E0 == doctest::Approx(2.0 * b.magnitude()));
            }
    }

    TEST_CASE("case-1 surface symmetric under (z1, z2) -> (-z2, -z1)") {
        GridSpec g;
        g.n1 = g.n2 = 25;
        const PotentialSurface s = sample_surface(base(), FieldConfig::from(base(), FieldKind::Case1Everywhere), Branch::Plus, g);
        for (std::size_t i = 0; i < 25; ++i)
            for (std::size_t j = 0; j < 25; ++j) CHECK(s.at(i, j) == doctest::Approx(s.at(j, i)).epsilon(1e-13));
    }

    TEST_CASE("case-2 inhomogeneous surface breaks that symmetry") {
        PhysicalParams p = base();
        p.b = 2.0;
        const double e1 = branch_energy(p, FieldConfig::from(p, FieldKind::Case2InhomogeneousRight), Branch::Plus, 1.0, -0.5);
        const double e2 = branch_energy(p, FieldConfig::from(p, FieldKind::Case2InhomogeneousRight), Branch::Plus, 0.5, -1.0);
        CHECK(std::abs(e1 - e2) > 1e-3 * std::abs(e1));
    }

    TEST_CASE("scaled output depends only on b r0 / B0") {
        GridSpec g;
        g.n1 = g.n2 = 9;
        PhysicalParams a = base(), b = base();
        b.mu = 4.0;
        b.b = a.b * a.r0() / b.r0();
        const auto sa = sample_surface(a, FieldConfig::from(a, FieldKind::Case1Everywhere), Branch::Minus, g);
        const auto sb = sample_surface(b, FieldConfig::from(b, FieldKind::Case1Everywhere), Branch::Minus, g);
        for (std::size_t k = 0; k < sa.values.size(); ++k)
            CHECK(sa.values[k] == doctest::Approx(sb.values[k]).epsilon(1e-12));
    }

    TEST_CASE("unit scale when B0 = 0") {
        PhysicalParams p;
        p.b = 0.0;
        const auto s = surface_scale(p);
        CHECK_FALSE(s.natural);
        CHECK(s.E0 == 1.0);
        CHECK(s.r0 == 1.0);
    }

    TEST_CASE("diagonal cuts") {
        const PhysicalParams p = base();
        const FieldConfig c1 = FieldConfig::from(p, FieldKind::Case1Everywhere);
        CutSpec spec;
        const Profile minus = diagonal_cut(p, c1, Branch::Minus, spec);
        for (std::size_t i = 1; i < minus.values.size(); ++i) CHECK(minus.values[i] < minus.values[i - 1]);

        // plus cut is the double-well potential at z = 2 z1
        const Profile plus = diagonal_cut(p, c1, Branch::Plus, spec);
        const double g = 0.5 * p.b * p.mu;
        for (std::size_t i = 0; i < plus.z1.size(); i += 37) {
            const double z = 2.0 * plus.z1[i] * plus.scale.r0;
            const double v = 2.0 / (z * z * z) + std::sqrt(g * g * z * z + 4.0 / std::pow(z, 6));
            CHECK(plus.values[i] * plus.scale.E0 == doctest::Approx(v).epsilon(1e-13));
        }

        // constant right-side field: 2f + sqrt(mu^2 B0^2 + 4f^2), tending to mu B0
        PhysicalParams q = base();
        q.b = 0.0;
        const FieldConfig c2 = FieldConfig::from(q, FieldKind::Case2ConstantRight);
        CutSpec far;
        far.z1_min = 0.1;
        far.z1_max = 200.0;
        far.spacing = Spacing::Logarithmic;
        const Profile k2 = diagonal_cut(q, c2, Branch::Plus, far);
        for (std::size_t i = 1; i < k2.values.size(); ++i) CHECK(k2.values[i] < k2.values[i - 1]);
        CHECK(k2.values.back() == doctest::Approx(1.0).epsilon(1e-6));

        // no fields: minus is the singlet (0), plus the triplet (4f)
        PhysicalParams none;
        const Profile z0 = diagonal_cut(none, FieldConfig::from(none, FieldKind::Case1Everywhere), Branch::Minus, spec);
        for (double v : z0.values) CHECK(v == 0.0);
    }

    TEST_CASE("mirrored plus cut has two minima") {
        CutSpec spec;
        spec.mirrored = true;
        const Profile p = diagonal_cut(base(), FieldConfig::from(base(), FieldKind::Case1Everywhere), Branch::Plus, spec);
        CHECK(p.z1.size() == 2 * spec.n);
        int minima = 0;
        for (std::size_t i = 1; i + 1 < p.values.size(); ++i)
            if (p.values[i] < p.values[i - 1] && p.values[i] < p.values[i + 1]) ++minima;
        CHECK(minima == 2);
    }

    TEST_CASE("forces") {
        GridSpec g;
        g.n1 = g.n2 = 31;
        const auto s = sample_surface(base(), FieldConfig::from(base(), FieldKind::Case1Everywhere), Branch::Plus, g);
        const ForceField f = effective_force(s);
        for (std::size_t i = 0; i < 31; ++i) CHECK(f.f1_at(i, i) == doctest::Approx(-f.f2_at(i, i)).epsilon(1e-9));

        PotentialSurface flat = s;
        std::fill(flat.values.begin(), flat.values.end(), 3.0);
        const ForceField zero = effective_force(flat);
        for (double v : zero.f1) CHECK(v == 0.0);

        GridSpec coarse;
        coarse.n1 = 2;
        coarse.n2 = 5;
        const auto c = sample_surface(base(), FieldConfig::from(base(), FieldKind::Case1Everywhere), Branch::Plus, coarse);
        CHECK_THROWS_AS(effective_force(c), ConfigurationError);

        // right-side field: forces on the two particles differ
        PhysicalParams p = base();
        p.b = 2.0;
        const auto s2 = sample_surface(p, FieldConfig::from(p, FieldKind::Case2InhomogeneousRight), Branch::Minus, g);
        const ForceField f2 = effective_force(s2);
        CHECK(std::abs(std::abs(f2.f1_at(10, 20)) - std::abs(f2.f2_at(10, 20))) > 1e-6);
    }

    TEST_CASE("sampling is independent of the worker count") {
        GridSpec g;
        g.n1 = g.n2 = 40;
        const PhysicalParams p = base();
        const FieldConfig c = FieldConfig::from(p, FieldKind::Case2InhomogeneousRight);
        setenv(kMaxWorkersEnv, "1", 1);
        CHECK(worker_count(100) == 1);
        const auto one = sample_surface(p, c, Branch::Minus, g);
        setenv(kMaxWorkersEnv, "4", 1);
        const auto many = sample_surface(p, c, Branch::Minus, g);
        unsetenv(kMaxWorkersEnv);
        CHECK(one.values == many.values);
    }

    TEST_CASE("parallel_for covers every index and propagates errors") {
        setenv(kMaxWorkersEnv, "3", 1);
        std::vector<std::atomic<int>> hits(100);
        parallel_for(100, [&](std::size_t i) { hits[i]++; });
        for (auto& h : hits) CHECK(h.load() == 1);
        CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                            if (i == 7) throw std::runtime_error("boom");
                        }),
                        std::runtime_error);
        unsetenv(kMaxWorkersEnv);
    }

    TEST_CASE("csv output") {
        GridSpec g;
        g.n1 = g.n2 = 3;
        const auto s = sample_surface(base(), FieldConfig::from(base(), FieldKind::Case1Everywhere), Branch::Plus, g);
        std::ostringstream clipped, raw;
        write_surface_csv(clipped, s, true);
        write_surface_csv(raw, s, false);
        CHECK(clipped.str().find("z1_over_r0,z2_over_r0,E_over_E0\n") != std::string::npos);
        CHECK(clipped.str().find("# case=case1 branch=plus") == 0);
        std::istringstream in(clipped.str());
        std::string line;
        int rows = 0;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#' || line[0] == 'z') continue;
            ++rows;
            const double v = std::stod(line.substr(line.rfind(',') + 1));
            CHECK(std::abs(v) <= kClipLimit);
        }
        CHECK(rows == 9);
    }

    TEST_CASE("shortest round-trip formatting") {
        testing::Gen g(1);
        for (int k = 0; k < 1000; ++k) {
            const double x = g.uniform(-1, 1) * std::pow(10.0, g.uniform(-290, 290));
            CHECK(std::stod(format_double(x)) == x);
        }
        CHECK(format_double(0.1) == "0.1");
        CHECK(format_double(3.0) == "3");
    }
}

#include "spindip/app/runner.hpp"
#include "spindip/app/scenario.hpp"
#include "spindip/app/validation.hpp"
#include "spindip/errors.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace spindip;
using namespace spindip::app;
namespace fs = std::filesystem;

namespace {

std::string schema_path(const std::string& text) {
    try {
        parse_scenario(text);
    } catch (const SchemaError& e) {
        return e.path();
    }
    return "<accepted>";
}

fs::path scratch_dir() {
    std::random_device rd;
    return fs::temp_directory_path() / ("spindip-test-" + std::to_string(rd()));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_SUITE("scenario") {
    TEST_CASE("minimal surface scenario") {
        const Scenario sc = parse_scenario("name: s\ncommand: surface\nparams: {mu: 2, B0: 1}\n");
        CHECK(sc.command == Command::Surface);
        CHECK(sc.params.mu == 2.0);
        CHECK(sc.field == FieldKind::Case1Everywhere);
        CHECK(sc.surface.grid.n1 == 101);
    }

    TEST_CASE("schema errors carry the field path") {
        CHECK(schema_path("") == "<root>");
        CHECK(schema_path("command: surface\n") == "name");
        CHECK(schema_path("name: a\n") == "command");
        CHECK(schema_path("name: a\ncommand: fly\n") == "command");
        CHECK(schema_path("name: a\ncommand: surface\n") == "params");
        CHECK(schema_path("name: a\ncommand: surface\nparams: {mu: x}\n") == "params.mu");
        CHECK(schema_path("name: a\ncommand: surface\nparams: {mu: -1}\n") == "params");
        CHECK(schema_path("name: a\ncommand: surface\nparams: {mu: 1, nu: 2}\n") == "params.nu");
        CHECK(schema_path("name: a\ncommand: surface\nparams: {mu: 1}\nsurface: {grid: {}}\n") == "surface.grid");
        CHECK(schema_path("name: a\ncommand: surface\nparams: {mu: 1}\nsurface: {grid: {n1: 1}}\n") == "surface.grid");
        CHECK(schema_path("name: a\ncommand: surface\nparams: {mu: 1}\nsurface: {grid: {z1: [0, 3]}}\n") == "surface.grid");
        CHECK(schema_path("name: a\ncommand: surface\nparams: {mu: 1}\nsurface: {branch: middle}\n") == "surface.branch");
        CHECK(schema_path("name: a\ncommand: surface\nparams: {mu: 1}\nfield: {kind: case9}\n") == "field.kind");
        CHECK(schema_path("name: a\ncommand: surface\nparams: {mu: 1, b: 1}\nfield: {kind: case2_constant}\n") == "field");
        CHECK(schema_path("name: a\ncommand: cut\nparams: {mu: 1}\nsurface: {}\n") == "surface");
        CHECK(schema_path("name: a\ncommand: measurement\nmeasurement: {trials: 5}\n") == "measurement");
        CHECK(schema_path("name: a\ncommand: tunneling\nparams: {b: 1}\ntunneling: {n_points: 10}\n") == "tunneling.n_points");
        CHECK(schema_path("name: a\ncommand: confinement\nconfinement: {Omega: 0}\n") == "confinement");
        CHECK(schema_path("name: a b\ncommand: wkb\nconstants: neutron\n") == "name");
        CHECK(schema_path("name: a\ncommand: wkb\nconstants: proton\n") == "constants");
        CHECK(schema_path("name: a\ncommand: surface\nparams: [1, 2]\n") == "params");
    }

    TEST_CASE("neutron constants") {
        const Scenario sc = parse_scenario("name: n\ncommand: wkb\nconstants: neutron\nneutron: {r_m_over_r_c: 2000}\n");
        CHECK(sc.constants == Constants::Neutron);
        CHECK(sc.params.r_c == 1e-13);
        CHECK(well_minimum(sc.params) == doctest::Approx(2e-10));
    }

    TEST_CASE("missing file") {
        CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.yaml"), SchemaError);
    }
}

TEST_SUITE("runner") {
    TEST_CASE("surface artifacts and byte-identical rerun") {
        const Scenario sc = parse_scenario(
            "name: surf\ncommand: surface\nparams: {mu: 1, b: 1, B0: 1}\nfield: {kind: case2_inhomogeneous}\n"
            "surface: {branch: [minus, plus], forces: true, grid: {n1: 12, n2: 9}}\n");
        const fs::path dir = scratch_dir();
        const RunResult a = run_scenario(sc, dir / "a");
        const RunResult b = run_scenario(sc, dir / "b");
        REQUIRE(a.files.size() == 7);
        for (std::size_t i = 0; i < a.files.size(); ++i) CHECK(slurp(a.files[i]) == slurp(b.files[i]));
        CHECK(fs::exists(dir / "a" / "surf_minus.csv"));
        CHECK(fs::exists(dir / "a" / "surf_plus_raw.csv"));
        CHECK(fs::exists(dir / "a" / "surf.json"));
        const auto meta = nlohmann::json::parse(slurp(dir / "a" / "surf.json"));
        CHECK(meta["params"]["b"] == 1.0);
        CHECK(meta["field"]["kind"] == "case2_inhomogeneous");
        CHECK(meta["grid"]["n1"] == 12);
        fs::remove_all(dir);
    }

    TEST_CASE("tunneling with neutron constants reports w") {
        const Scenario sc = parse_scenario("name: nt\ncommand: tunneling\nconstants: neutron\ntunneling: {solve: false}\n");
        const fs::path dir = scratch_dir();
        const RunResult r = run_scenario(sc, dir);
        const double w = r.summary["wkb"]["w"];
        CHECK(w > 0.3);
        CHECK(w < 0.5);
        fs::remove_all(dir);
    }

    TEST_CASE("physics failures surface as model errors") {
        const Scenario sc = parse_scenario("name: bad\ncommand: tunneling\nparams: {b: 1, r_c: 100}\n");
        const fs::path dir = scratch_dir();
        CHECK_THROWS_AS(run_scenario(sc, dir), ModelError);
        fs::remove_all(dir);
    }

    TEST_CASE("measurement report fields") {
        const Scenario sc = parse_scenario("name: m\ncommand: measurement\nmeasurement: {theta: 0.5235987755982988}\n");
        const fs::path dir = scratch_dir();
        const RunResult r = run_scenario(sc, dir);
        for (const char* key : {"theta", "rho_diagonal", "expectation_sz_left", "expectation_sz_right", "p_plus",
                                "p_minus", "concurrence"})
            CHECK(r.summary.contains(key));
        CHECK(double(r.summary["p_plus"]) == doctest::Approx(0.25));
        fs::remove_all(dir);
    }
}

TEST_SUITE("validation") {
    TEST_CASE("fresh checkout passes") {
        ValidationOptions opt;
        opt.determinism = false;
        const ValidationReport r = run_validation(opt);
        for (const auto* f : r.failures()) FAIL_CHECK(f->module << ": " << f->property << " " << f->detail);
        CHECK(r.passed());
        CHECK(r.to_json()["suites"].size() == r.suites.size());
        for (const auto& s : r.suites) CHECK(s.seconds >= 0.0);
    }

    TEST_CASE("eigenvalue mutation is caught in hamiltonians") {
        ValidationOptions opt;
        opt.mutation = "eigenvalue";
        opt.determinism = false;
        const ValidationReport r = run_validation(opt);
        CHECK_FALSE(r.passed());
        bool in_hamiltonians = false;
        for (const auto* f : r.failures()) in_hamiltonians = in_hamiltonians || f->module == "hamiltonians";
        CHECK(in_hamiltonians);
        CHECK_THROWS(run_validation({"no-such-mutation", false}));
    }
}

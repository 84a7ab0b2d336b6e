// spindip: scenario runner and validation front end.

#include "spindip/app/runner.hpp"
#include "spindip/app/scenario.hpp"
#include "spindip/app/validation.hpp"
#include "spindip/errors.hpp"
#include "spindip/parallel.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using namespace spindip;

namespace {

enum Exit { Ok = 0, Failure = 1, Schema = 2, Physics = 3 };

fs::path scenario_dir(const std::string& requested) {
    if (!requested.empty()) return requested;
    if (const char* env = std::getenv("SPINDIP_SCENARIO_DIR")) return env;
    if (fs::is_directory("scenarios")) return "scenarios";
    return SPINDIP_DEFAULT_SCENARIO_DIR;
}

int cmd_run(const std::string& file, const std::string& out) {
    try {
        const app::Scenario sc = app::load_scenario(file);
        const fs::path dir = out.empty() ? fs::path("out") / sc.name : fs::path(out);
        const app::RunResult r = app::run_scenario(sc, dir);
        for (const auto& f : r.files) std::cout << f.string() << '\n';
        return r.passed ? Ok : Failure;
    } catch (const app::SchemaError& e) {
        std::cerr << "schema error at " << e.what() << '\n';
        return Schema;
    } catch (const ModelError& e) {
        std::cerr << "physics error in " << e.what() << '\n';
        return Physics;
    }
}

int cmd_validate(bool as_json, const std::string& mutation, bool skip_determinism) {
    app::ValidationOptions opt;
    opt.mutation = mutation;
    opt.determinism = !skip_determinism;
    const app::ValidationReport report = app::run_validation(opt);
    if (as_json) {
        std::cout << report.to_json().dump(2) << '\n';
    } else {
        for (const auto& s : report.suites) {
            std::cout << (s.passed() ? "PASS " : "FAIL ") << s.name << " [" << s.module << "] "
                      << s.checks.size() << " checks, " << s.seconds << " s\n";
            for (const auto& c : s.checks)
                if (!c.passed)
                    std::cout << "    " << c.property << ": observed " << c.observed << ", expected " << c.expected
                              << ", tolerance " << c.tolerance << (c.detail.empty() ? "" : " (" + c.detail + ")")
                              << '\n';
        }
        std::cout << (report.passed() ? "all suites passed" : "validation FAILED") << " in " << report.seconds
                  << " s\n";
    }
    return report.passed() ? Ok : Failure;
}

int cmd_list(const std::string& dir_arg) {
    const fs::path dir = scenario_dir(dir_arg);
    if (!fs::is_directory(dir)) {
        std::cerr << "no scenario directory at " << dir.string() << '\n';
        return Failure;
    }
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && (e.path().extension() == ".yaml" || e.path().extension() == ".yml"))
            files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        try {
            const app::Scenario sc = app::load_scenario(f);
            std::cout << sc.name << '\t' << app::to_string(sc.command) << '\t' << f.string() << '\n';
        } catch (const std::exception& e) {
            std::cout << f.filename().string() << "\tINVALID\t" << e.what() << '\n';
        }
    }
    return Ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App cli{"Two-dipole spin model: surfaces, tunneling, measurement and validation"};
    cli.require_subcommand(1);
    cli.footer(std::string("Environment: ") + kMaxWorkersEnv + " caps worker threads; SPINDIP_SCENARIO_DIR sets the scenario directory.");

    std::string file, out;
    auto* run = cli.add_subcommand("run", "Run a scenario file and write its artifacts");
    run->add_option("scenario", file, "Scenario YAML file")->required();
    run->add_option("--out", out, "Output directory (default out/<name>)");

    bool as_json = false, skip_det = false;
    std::string mutation;
    auto* validate = cli.add_subcommand("validate", "Run every oracle comparison and invariant suite");
    validate->add_flag("--json", as_json, "Print the machine-readable report");
    validate->add_option("--mutate", mutation, "Inject a known fault to exercise the harness")
        ->check(CLI::IsMember(app::known_mutations()));
    validate->add_flag("--skip-determinism", skip_det, "Skip the artifact rerun comparison");

    std::string dir;
    auto* list = cli.add_subcommand("list-scenarios", "List scenario files");
    list->add_option("--dir", dir, "Scenario directory");

    CLI11_PARSE(cli, argc, argv);
    try {
        if (*run) return cmd_run(file, out);
        if (*validate) return cmd_validate(as_json, mutation, skip_det);
        if (*list) return cmd_list(dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Failure;
    }
    return Failure;
}

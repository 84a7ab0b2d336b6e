#include "spindip/app/runner.hpp"

#include "spindip/app/validation.hpp"
#include "spindip/confinement.hpp"
#include "spindip/errors.hpp"
#include "spindip/format.hpp"
#include "spindip/measurement.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>

namespace spindip::app {

namespace fs = std::filesystem;
using nlohmann::json;

json to_json(const PhysicalParams& p) {
    return {{"mu", p.mu}, {"m", p.m}, {"b", p.b}, {"B0", p.B0}, {"hbar", p.hbar}, {"r_c", p.r_c}};
}

json to_json(const FieldConfig& c) {
    return {{"kind", to_string(c.kind)}, {"B0", c.B0}, {"b", c.b}};
}

namespace {

// Non-finite values are not representable in JSON; emit them as strings.
json number(double x) {
    if (std::isfinite(x)) return x;
    return format_double(x);
}

class ArtifactWriter {
public:
    explicit ArtifactWriter(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

    void write(const std::string& file, const std::function<void(std::ostream&)>& body) {
        const fs::path path = dir_ / file;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        body(out);
        out.close();
        if (!out) throw std::runtime_error("failed writing " + path.string());
        files_.push_back(path);
    }

    void write_json(const std::string& file, const json& j) {
        write(file, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
    }

    const std::vector<fs::path>& files() const { return files_; }

private:
    fs::path dir_;
    std::vector<fs::path> files_;
};

json header(const Scenario& sc) {
    json j;
    j["name"] = sc.name;
    j["command"] = to_string(sc.command);
    j["constants"] = sc.constants == Constants::Neutron ? "neutron" : "custom";
    if (sc.constants == Constants::Neutron)
        j["neutron"] = {{"r_c_cm", sc.neutron.r_c_cm}, {"r_m_over_r_c", sc.neutron.r_m_over_r_c}};
    j["params"] = to_json(sc.params);
    j["field"] = to_json(sc.field_config());
    return j;
}

json scale_json(const SurfaceScale& s) {
    return {{"E0", s.E0}, {"r0", s.r0}, {"natural", s.natural}};
}

json file_names(const std::vector<fs::path>& files) {
    json arr = json::array();
    for (const auto& f : files) arr.push_back(f.filename().string());
    return arr;
}

RunResult run_surface(const Scenario& sc, ArtifactWriter& w) {
    json meta = header(sc);
    const GridSpec& g = sc.surface.grid;
    meta["grid"] = {{"z1_over_r0", {g.z1_min, g.z1_max}},
                    {"z2_over_r0", {-g.z2_min, -g.z2_max}},
                    {"n1", g.n1},
                    {"n2", g.n2},
                    {"spacing", to_string(g.spacing)}};
    meta["clip_limit_E0"] = kClipLimit;
    meta["forces"] = sc.surface.forces;
    json branches = json::array();
    for (Branch b : sc.surface.branches) {
        const PotentialSurface s = sample_surface(sc.params, sc.field_config(), b, g);
        const std::string base = sc.name + "_" + to_string(b);
        w.write(base + ".csv", [&](std::ostream& o) { write_surface_csv(o, s, true); });
        w.write(base + "_raw.csv", [&](std::ostream& o) { write_surface_csv(o, s, false); });
        double lo = s.values.front(), hi = s.values.front();
        for (double v : s.values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        json entry = {{"branch", to_string(b)}, {"min_E_over_E0", number(lo)}, {"max_E_over_E0", number(hi)}};
        if (sc.surface.forces) {
            const ForceField f = effective_force(s);
            w.write(base + "_forces.csv", [&](std::ostream& o) { write_force_csv(o, s, f); });
        }
        meta["scale"] = scale_json(s.scale);
        branches.push_back(entry);
    }
    meta["branches"] = branches;
    meta["data_files"] = file_names(w.files());
    w.write_json(sc.name + ".json", meta);
    return {w.files(), meta, true};
}

json profile_stats(const Profile& p) {
    std::size_t minima = 0;
    for (std::size_t i = 1; i + 1 < p.values.size(); ++i)
        if (p.values[i] < p.values[i - 1] && p.values[i] < p.values[i + 1]) ++minima;
    bool decreasing = true;
    for (std::size_t i = 1; i < p.values.size(); ++i)
        if (p.z1[i] > 0.0 && p.z1[i - 1] > 0.0 && !(p.values[i] < p.values[i - 1])) decreasing = false;
    return {{"branch", to_string(p.branch)},
            {"local_minima", minima},
            {"decreasing_for_positive_z1", decreasing}};
}

RunResult run_cut(const Scenario& sc, ArtifactWriter& w) {
    json meta = header(sc);
    const CutSpec& c = sc.cut.spec;
    meta["cut"] = {{"z1_over_r0", {c.z1_min, c.z1_max}},
                   {"n", c.n},
                   {"spacing", to_string(c.spacing)},
                   {"mirrored", c.mirrored}};
    meta["clip_limit_E0"] = kClipLimit;
    json branches = json::array();
    for (Branch b : sc.cut.branches) {
        const Profile p = diagonal_cut(sc.params, sc.field_config(), b, c);
        const std::string base = sc.name + "_" + to_string(b);
        w.write(base + ".csv", [&](std::ostream& o) { write_profile_csv(o, p, true); });
        w.write(base + "_raw.csv", [&](std::ostream& o) { write_profile_csv(o, p, false); });
        meta["scale"] = scale_json(p.scale);
        branches.push_back(profile_stats(p));
    }
    meta["branches"] = branches;
    meta["data_files"] = file_names(w.files());
    w.write_json(sc.name + ".json", meta);
    return {w.files(), meta, true};
}

json wkb_json(const PhysicalParams& params) {
    const WkbBracket br = wkb_exponent_integral(params, 0.0);
    const double s = std::sqrt(params.m * params.mu * params.mu) / params.hbar;
    json j = {{"bracket_E0", br.value},
              {"exponent", tunneling_exponent_at_rest(params)},
              {"rc_dominant_exponent", -24.0 * s / std::sqrt(params.r_c)},
              {"w", tunneling_probability(params, 0.0)},
              {"k_m", br.k_m},
              {"k_c", br.k_c},
              {"rc_over_rm", br.rc_over_rm}};
    if (!br.warning.empty()) j["warning"] = br.warning;
    return j;
}

RunResult run_tunneling(const Scenario& sc, ArtifactWriter& w) {
    const TunnelingOptions& t = sc.tunneling;
    json meta = header(sc);
    const BOPotential v(sc.params, t.regularization);
    meta["options"] = {{"regularization", to_string(t.regularization)},
                       {"half_width_over_rm", t.half_width_over_rm},
                       {"n_points", t.n_points},
                       {"n_states", t.n_states},
                       {"oscillation_samples", t.oscillation_samples},
                       {"solve", t.solve},
                       {"wkb", t.wkb}};
    meta["r_m"] = v.r_m();
    meta["f_at_minimum"] = v.f_at_minimum();
    meta["V_at_minimum"] = v(v.r_m());
    if (t.solve) {
        SolverConfig cfg;
        cfg.half_width = t.half_width_over_rm * v.r_m();
        cfg.n_points = t.n_points;
        cfg.n_states = t.n_states;
        const SplittingResult r = splitting(v, cfg);
        const Oscillation o = oscillation(r, 0.0);
        json levels = json::array();
        const auto states = solve_eigenstates(v, cfg);
        for (const auto& s : states)
            levels.push_back({{"energy", s.energy}, {"parity", to_string(s.parity)},
                              {"parity_residual", s.parity_residual}, {"residual", s.residual}});
        meta["levels"] = levels;
        meta["splitting"] = {{"E_S", r.E_S},
                             {"E_A", r.E_A},
                             {"Delta", r.Delta},
                             {"Delta_matrix_element", r.Delta_matrix_element},
                             {"t_swap", number(o.t_swap)},
                             {"p_right_at_t_swap", oscillation(r, o.t_swap).p_right}};
        w.write(sc.name + "_states.csv", [&](std::ostream& out) {
            out << "# relative-coordinate eigenfunctions, z in units of r_m, V in units of f(r_m)\n";
            out << "z_over_rm,V_over_f,phi_S,phi_A,phi_R,phi_L\n";
            for (std::size_t i = 0; i < r.phi_S.z.size(); ++i) {
                const double z = r.phi_S.z[i];
                out << format_double(z / v.r_m()) << ',' << format_double(v(z) / v.f_at_minimum()) << ','
                    << format_double(r.phi_S.values[i]) << ',' << format_double(r.phi_A.values[i]) << ','
                    << format_double(r.phi_R.values[i]) << ',' << format_double(r.phi_L.values[i]) << '\n';
            }
        });
        if (!o.is_static) {
            w.write(sc.name + "_oscillation.csv", [&](std::ostream& out) {
                out << "# packet started in the right well\n";
                out << "t_over_tswap,p_right,p_left\n";
                const std::size_t n = t.oscillation_samples;
                for (std::size_t k = 0; k < n; ++k) {
                    const double u = 2.0 * static_cast<double>(k) / static_cast<double>(n - 1);
                    const Oscillation ok = oscillation(r, u * o.t_swap);
                    out << format_double(u) << ',' << format_double(ok.p_right) << ','
                        << format_double(ok.p_left) << '\n';
                }
            });
        }
    }
    if (t.wkb) meta["wkb"] = wkb_json(sc.params);
    meta["data_files"] = file_names(w.files());
    w.write_json(sc.name + ".json", meta);
    return {w.files(), meta, true};
}

RunResult run_wkb(const Scenario& sc, ArtifactWriter& w) {
    json meta = header(sc);
    meta["r_m"] = well_minimum(sc.params);
    meta["E_max"] = wkb_max_energy(sc.params);
    meta["at_rest"] = wkb_json(sc.params);
    meta["B_5_6_1_2"] = incomplete_beta(5.0 / 6.0, 0.5, 1.0);
    meta["energy_samples"] = sc.wkb.energy_samples;
    const double e_max = wkb_max_energy(sc.params);
    w.write(sc.name + "_w.csv", [&](std::ostream& out) {
        out << "# one-sided WKB action and penetration probability across [0, E_max]\n";
        out << "E_over_Emax,bracket,w\n";
        const std::size_t n = sc.wkb.energy_samples;
        for (std::size_t k = 0; k < n; ++k) {
            const double u = static_cast<double>(k) / static_cast<double>(n - 1);
            const WkbBracket b = wkb_exponent_integral(sc.params, u * e_max);
            out << format_double(u) << ',' << format_double(b.value) << ','
                << format_double(tunneling_probability(sc.params, u * e_max)) << '\n';
        }
    });
    meta["data_files"] = file_names(w.files());
    w.write_json(sc.name + ".json", meta);
    return {w.files(), meta, true};
}

RunResult run_measurement(const Scenario& sc, ArtifactWriter& w) {
    const MeasurementOptions& m = sc.measurement;
    json meta = header(sc);
    double theta = 0.0;
    if (m.theta) {
        theta = *m.theta;
        meta["theta_source"] = "given";
    } else {
        theta = mixing_angle(sc.params, sc.field_config(), *m.z1, *m.z2);
        meta["theta_source"] = {{"z1", *m.z1}, {"z2", *m.z2}};
        meta["protectable"] = protectable(sc.params, sc.field_config(), *m.z1, *m.z2);
    }
    const LeftDensityMatrix rho = rho_left(RhoSource::MinusA, theta);
    const MeasurementPrediction left = protective_expectation(theta);
    const MeasurementPrediction right = protective_expectation_right(theta);
    const TransverseSpin tr = transverse_expectations(theta);
    const MeasurementSample sample = standard_measurement_simulation(theta, m.trials, m.seed);
    meta["theta"] = theta;
    meta["rho_diagonal"] = {rho.mat(0, 0), rho.mat(1, 1), rho.mat(2, 2), rho.mat(3, 3)};
    meta["expectation_sz_left"] = left.expectation_sz;
    meta["expectation_sz_right"] = right.expectation_sz;
    meta["p_plus"] = left.p_plus;
    meta["p_minus"] = left.p_minus;
    meta["transverse"] = {{"sx", tr.sx}, {"sy", tr.sy}};
    meta["concurrence"] = spin_concurrence(theta);
    meta["simulation"] = {{"trials", sample.n_trials},
                          {"seed", m.seed},
                          {"n_plus", sample.n_plus},
                          {"n_minus", sample.n_minus},
                          {"mean", sample.mean},
                          {"standard_error", sample.standard_error}};
    w.write_json(sc.name + ".json", meta);
    return {w.files(), meta, true};
}

RunResult run_confinement(const Scenario& sc, ArtifactWriter& w) {
    const TrapConfig& t = sc.trap;
    json meta;
    meta["name"] = sc.name;
    meta["command"] = to_string(sc.command);
    meta["trap"] = {{"mass", t.mass}, {"Omega", t.Omega}, {"z0", t.z0}, {"hbar", t.hbar}};
    meta["xi"] = t.xi();
    meta["xi_z0_squared"] = t.separation_parameter();
    meta["well_separated"] = t.well_separated();
    meta["overlap"] = packet_overlap(t);
    const HyperfineExpectations h = hyperfine_expectations(t);
    meta["hyperfine"] = {{"delta_S", h.delta_S}, {"delta_T", h.delta_T}, {"prefactor", h.prefactor},
                         {"suppression", h.suppression}};
    if (t.z0 > 0.0) {
        const KineticExpectations k = kinetic_expectations(t);
        meta["kinetic"] = {{"com", k.com},
                           {"rel_S", k.rel_S},
                           {"rel_T", k.rel_T},
                           {"uncorrelated", k.uncorrelated},
                           {"corrections_negligible", k.corrections_negligible}};
    } else {
        meta["kinetic"] = "undefined for z0 = 0 (antisymmetric state vanishes)";
    }
    w.write_json(sc.name + ".json", meta);
    return {w.files(), meta, true};
}

RunResult run_validate(const Scenario& sc, ArtifactWriter& w) {
    const ValidationReport report = run_validation({});
    json meta = report.to_json();
    meta["name"] = sc.name;
    w.write_json(sc.name + ".json", meta);
    return {w.files(), meta, report.passed()};
}

}  // namespace

RunResult run_scenario(const Scenario& scenario, const fs::path& out_dir) {
    ArtifactWriter w(out_dir);
    switch (scenario.command) {
        case Command::Surface: return run_surface(scenario, w);
        case Command::Cut: return run_cut(scenario, w);
        case Command::Tunneling: return run_tunneling(scenario, w);
        case Command::Wkb: return run_wkb(scenario, w);
        case Command::Measurement: return run_measurement(scenario, w);
        case Command::Confinement: return run_confinement(scenario, w);
        case Command::Validate: return run_validate(scenario, w);
    }
    throw std::logic_error("unhandled command");
}

}  // namespace spindip::app

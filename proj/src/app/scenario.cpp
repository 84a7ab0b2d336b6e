#include "spindip/app/scenario.hpp"

#include "spindip/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace spindip::app {

std::string to_string(Command c) {
    switch (c) {
        case Command::Surface: return "surface";
        case Command::Cut: return "cut";
        case Command::Tunneling: return "tunneling";
        case Command::Wkb: return "wkb";
        case Command::Measurement: return "measurement";
        case Command::Confinement: return "confinement";
        case Command::Validate: return "validate";
    }
    return "?";
}

namespace {

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

void require_map(const YAML::Node& node, const std::string& path) {
    if (!node.IsMap()) throw SchemaError(path.empty() ? "<root>" : path, "expected a mapping");
}

void allow_keys(const YAML::Node& node, const std::string& path, std::initializer_list<const char*> keys) {
    require_map(node, path);
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; }))
            throw SchemaError(join(path, key), "unknown field");
    }
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& path, const char* expected) {
    if (!node.IsScalar()) throw SchemaError(path, std::string("expected ") + expected);
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        throw SchemaError(path, std::string("expected ") + expected + ", got '" + node.Scalar() + "'");
    }
}

double number(const YAML::Node& parent, const std::string& path, const char* key, double fallback) {
    const YAML::Node n = parent[key];
    if (!n) return fallback;
    const double v = scalar<double>(n, join(path, key), "a number");
    if (!std::isfinite(v)) throw SchemaError(join(path, key), "must be finite");
    return v;
}

std::optional<double> optional_number(const YAML::Node& parent, const std::string& path, const char* key) {
    if (!parent[key]) return std::nullopt;
    return number(parent, path, key, 0.0);
}

std::size_t count(const YAML::Node& parent, const std::string& path, const char* key, std::size_t fallback) {
    const YAML::Node n = parent[key];
    if (!n) return fallback;
    const auto v = scalar<long long>(n, join(path, key), "an integer");
    if (v < 0) throw SchemaError(join(path, key), "must be non-negative");
    return static_cast<std::size_t>(v);
}

bool flag(const YAML::Node& parent, const std::string& path, const char* key, bool fallback) {
    const YAML::Node n = parent[key];
    if (!n) return fallback;
    return scalar<bool>(n, join(path, key), "true or false");
}

std::string text(const YAML::Node& parent, const std::string& path, const char* key, const std::string& fallback) {
    const YAML::Node n = parent[key];
    if (!n) return fallback;
    return scalar<std::string>(n, join(path, key), "a string");
}

// Converts a module's ConfigurationError into a schema error at `path`.
template <typename F>
auto at_path(const std::string& path, F&& f) {
    try {
        return f();
    } catch (const ModelError& e) {
        throw SchemaError(path, e.what());
    }
}

std::pair<double, double> range(const YAML::Node& parent, const std::string& path, const char* key,
                                std::pair<double, double> fallback) {
    const YAML::Node n = parent[key];
    if (!n) return fallback;
    const std::string p = join(path, key);
    if (!n.IsSequence() || n.size() != 2) throw SchemaError(p, "expected [min, max]");
    return {scalar<double>(n[0], p + "[0]", "a number"), scalar<double>(n[1], p + "[1]", "a number")};
}

std::vector<Branch> branches(const YAML::Node& parent, const std::string& path, std::vector<Branch> fallback) {
    const YAML::Node n = parent["branch"];
    if (!n) return fallback;
    const std::string p = join(path, "branch");
    std::vector<Branch> out;
    auto one = [&](const YAML::Node& item, const std::string& ip) {
        return at_path(ip, [&] { return branch_from_string(scalar<std::string>(item, ip, "minus or plus")); });
    };
    if (n.IsSequence()) {
        if (n.size() == 0) throw SchemaError(p, "empty branch list");
        for (std::size_t i = 0; i < n.size(); ++i) out.push_back(one(n[i], p + "[" + std::to_string(i) + "]"));
    } else {
        out.push_back(one(n, p));
    }
    return out;
}

Command command_from(const std::string& s, const std::string& path) {
    for (Command c : {Command::Surface, Command::Cut, Command::Tunneling, Command::Wkb, Command::Measurement,
                      Command::Confinement, Command::Validate})
        if (to_string(c) == s) return c;
    throw SchemaError(path, "unknown command '" + s + "'");
}

void parse_params(const YAML::Node& root, Scenario& sc) {
    const std::string constants = text(root, "", "constants", "custom");
    if (constants == "neutron") {
        sc.constants = Constants::Neutron;
        if (root["params"]) throw SchemaError("params", "not allowed together with constants: neutron");
        if (const YAML::Node n = root["neutron"]) {
            allow_keys(n, "neutron", {"r_c_cm", "r_m_over_r_c"});
            sc.neutron.r_c_cm = number(n, "neutron", "r_c_cm", sc.neutron.r_c_cm);
            sc.neutron.r_m_over_r_c = number(n, "neutron", "r_m_over_r_c", sc.neutron.r_m_over_r_c);
        }
        if (!(sc.neutron.r_c_cm > 0.0)) throw SchemaError("neutron.r_c_cm", "must be positive");
        if (!(sc.neutron.r_m_over_r_c > 1.0)) throw SchemaError("neutron.r_m_over_r_c", "must exceed 1");
        sc.params = neutron::params(sc.neutron.r_c_cm, sc.neutron.r_c_cm * sc.neutron.r_m_over_r_c);
        return;
    }
    if (constants != "custom") throw SchemaError("constants", "expected custom or neutron");
    if (root["neutron"]) throw SchemaError("neutron", "only valid with constants: neutron");
    const YAML::Node p = root["params"];
    if (!p) {
        if (sc.command == Command::Confinement || sc.command == Command::Validate ||
            sc.command == Command::Measurement)
            return;
        throw SchemaError("params", "required");
    }
    allow_keys(p, "params", {"mu", "m", "b", "B0", "hbar", "r_c"});
    PhysicalParams& q = sc.params;
    q.mu = number(p, "params", "mu", q.mu);
    q.m = number(p, "params", "m", q.m);
    q.b = number(p, "params", "b", q.b);
    q.B0 = number(p, "params", "B0", q.B0);
    q.hbar = number(p, "params", "hbar", q.hbar);
    q.r_c = number(p, "params", "r_c", q.r_c);
    at_path("params", [&] {
        q.validate();
        return 0;
    });
}

void parse_field(const YAML::Node& root, Scenario& sc) {
    const YAML::Node f = root["field"];
    if (!f) return;
    allow_keys(f, "field", {"kind"});
    sc.field = at_path("field.kind", [&] { return field_kind_from_string(text(f, "field", "kind", "case1")); });
    if (sc.field == FieldKind::Case2ConstantRight && sc.params.b != 0.0)
        throw SchemaError("field", "case2_constant takes no gradient; set params.b to 0");
    at_path("field", [&] {
        sc.field_config().validate();
        return 0;
    });
}

void parse_surface(const YAML::Node& n, Scenario& sc) {
    const std::string path = "surface";
    allow_keys(n, path, {"branch", "grid", "forces"});
    sc.surface.branches = branches(n, path, sc.surface.branches);
    sc.surface.forces = flag(n, path, "forces", sc.surface.forces);
    if (const YAML::Node g = n["grid"]) {
        const std::string gp = "surface.grid";
        allow_keys(g, gp, {"z1", "z2", "n1", "n2", "spacing"});
        if (g.size() == 0) throw SchemaError(gp, "empty grid specification");
        GridSpec& grid = sc.surface.grid;
        std::tie(grid.z1_min, grid.z1_max) = range(g, gp, "z1", {grid.z1_min, grid.z1_max});
        std::tie(grid.z2_min, grid.z2_max) = range(g, gp, "z2", {grid.z2_min, grid.z2_max});
        grid.n1 = count(g, gp, "n1", grid.n1);
        grid.n2 = count(g, gp, "n2", grid.n2);
        grid.spacing = at_path(join(gp, "spacing"), [&] { return spacing_from_string(text(g, gp, "spacing", "uniform")); });
        at_path(gp, [&] {
            grid.validate();
            return 0;
        });
    }
    if (sc.surface.forces && (sc.surface.grid.n1 < 3 || sc.surface.grid.n2 < 3))
        throw SchemaError("surface.forces", "forces need at least 3 samples per axis");
}

void parse_cut(const YAML::Node& n, Scenario& sc) {
    const std::string path = "cut";
    allow_keys(n, path, {"branch", "z1", "n", "spacing", "mirrored"});
    sc.cut.branches = branches(n, path, sc.cut.branches);
    CutSpec& c = sc.cut.spec;
    std::tie(c.z1_min, c.z1_max) = range(n, path, "z1", {c.z1_min, c.z1_max});
    c.n = count(n, path, "n", c.n);
    c.spacing = at_path("cut.spacing", [&] { return spacing_from_string(text(n, path, "spacing", "uniform")); });
    c.mirrored = flag(n, path, "mirrored", c.mirrored);
    at_path(path, [&] {
        c.validate();
        return 0;
    });
}

void parse_tunneling(const YAML::Node& n, Scenario& sc) {
    const std::string path = "tunneling";
    allow_keys(n, path, {"regularization", "half_width_over_rm", "n_points", "n_states", "oscillation_samples",
                         "solve", "wkb"});
    TunnelingOptions& t = sc.tunneling;
    t.regularization = at_path("tunneling.regularization",
                               [&] { return regularization_from_string(text(n, path, "regularization", "clamp")); });
    t.half_width_over_rm = number(n, path, "half_width_over_rm", t.half_width_over_rm);
    t.n_points = count(n, path, "n_points", t.n_points);
    t.n_states = count(n, path, "n_states", t.n_states);
    t.oscillation_samples = count(n, path, "oscillation_samples", t.oscillation_samples);
    t.solve = flag(n, path, "solve", t.solve);
    t.wkb = flag(n, path, "wkb", t.wkb);
    if (t.half_width_over_rm < 3.0) throw SchemaError("tunneling.half_width_over_rm", "must be at least 3");
    if (t.n_points < 501) throw SchemaError("tunneling.n_points", "must be at least 501");
    if (t.n_states < 2 || t.n_states > t.n_points) throw SchemaError("tunneling.n_states", "must lie in [2, n_points]");
    if (t.oscillation_samples < 2) throw SchemaError("tunneling.oscillation_samples", "must be at least 2");
}

void parse_wkb(const YAML::Node& n, Scenario& sc) {
    allow_keys(n, "wkb", {"energy_samples"});
    sc.wkb.energy_samples = count(n, "wkb", "energy_samples", sc.wkb.energy_samples);
    if (sc.wkb.energy_samples < 2) throw SchemaError("wkb.energy_samples", "must be at least 2");
}

void parse_measurement(const YAML::Node& n, Scenario& sc) {
    const std::string path = "measurement";
    allow_keys(n, path, {"theta", "z1", "z2", "trials", "seed"});
    MeasurementOptions& m = sc.measurement;
    m.theta = optional_number(n, path, "theta");
    m.z1 = optional_number(n, path, "z1");
    m.z2 = optional_number(n, path, "z2");
    m.trials = count(n, path, "trials", m.trials);
    m.seed = count(n, path, "seed", m.seed);
    if (m.trials < 1) throw SchemaError("measurement.trials", "must be at least 1");
    if (m.theta && (m.z1 || m.z2)) throw SchemaError("measurement.theta", "give either theta or z1/z2, not both");
    if (!m.theta && !(m.z1 && m.z2)) throw SchemaError("measurement", "needs theta or both z1 and z2");
    if (m.z1 && *m.z1 == *m.z2) throw SchemaError("measurement.z2", "must differ from z1");
}

void parse_trap(const YAML::Node& n, Scenario& sc) {
    allow_keys(n, "confinement", {"mass", "Omega", "z0", "hbar"});
    TrapConfig& t = sc.trap;
    t.mass = number(n, "confinement", "mass", t.mass);
    t.Omega = number(n, "confinement", "Omega", t.Omega);
    t.z0 = number(n, "confinement", "z0", t.z0);
    t.hbar = number(n, "confinement", "hbar", t.hbar);
    at_path("confinement", [&] {
        t.validate();
        return 0;
    });
}

}  // namespace

Scenario parse_scenario(const std::string& text_in, const std::string& origin) {
    YAML::Node root;
    try {
        root = YAML::Load(text_in);
    } catch (const YAML::Exception& e) {
        throw SchemaError("<root>", origin + ": YAML syntax error: " + e.what());
    }
    if (!root || root.IsNull()) throw SchemaError("<root>", "empty scenario");
    allow_keys(root, "", {"name", "command", "constants", "neutron", "params", "field", "surface", "cut",
                          "tunneling", "wkb", "measurement", "confinement"});
    Scenario sc;
    if (!root["name"]) throw SchemaError("name", "required");
    sc.name = text(root, "", "name", "");
    if (sc.name.empty() || sc.name.find_first_of("/\\ ") != std::string::npos)
        throw SchemaError("name", "must be a non-empty file-name-safe string");
    if (!root["command"]) throw SchemaError("command", "required");
    sc.command = command_from(text(root, "", "command", ""), "command");

    parse_params(root, sc);
    parse_field(root, sc);

    auto section = [&](const char* key, Command owner, auto parse) {
        const YAML::Node n = root[key];
        if (!n) return;
        if (sc.command != owner && !(owner == Command::Wkb && sc.command == Command::Tunneling))
            throw SchemaError(key, "section does not apply to command '" + to_string(sc.command) + "'");
        if (n.IsNull()) return;
        parse(n, sc);
    };
    section("surface", Command::Surface, parse_surface);
    section("cut", Command::Cut, parse_cut);
    section("tunneling", Command::Tunneling, parse_tunneling);
    section("wkb", Command::Wkb, parse_wkb);
    section("measurement", Command::Measurement, parse_measurement);
    section("confinement", Command::Confinement, parse_trap);

    if (sc.command == Command::Measurement && !root["measurement"])
        throw SchemaError("measurement", "required for command measurement");
    if (sc.command == Command::Confinement && !root["confinement"])
        throw SchemaError("confinement", "required for command confinement");
    if ((sc.command == Command::Measurement) && sc.measurement.z1 && !root["params"] &&
        sc.constants == Constants::Custom)
        throw SchemaError("params", "required when theta is derived from z1/z2");
    return sc;
}

Scenario load_scenario(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw SchemaError("<file>", "cannot read " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    Scenario sc = parse_scenario(buf.str(), file.string());
    sc.source = file;
    return sc;
}

}  // namespace spindip::app

#include "spindip/surfaces.hpp"

#include "spindip/errors.hpp"
#include "spindip/format.hpp"
#include "spindip/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace spindip {

std::string to_string(Branch b) { return b == Branch::Minus ? "minus" : "plus"; }

Branch branch_from_string(const std::string& name) {
    if (name == "minus") return Branch::Minus;
    if (name == "plus") return Branch::Plus;
    throw ConfigurationError("surfaces", "unknown branch '" + name + "' (expected minus or plus)");
}

std::string to_string(Spacing s) { return s == Spacing::Uniform ? "uniform" : "log"; }

Spacing spacing_from_string(const std::string& name) {
    if (name == "uniform") return Spacing::Uniform;
    if (name == "log") return Spacing::Logarithmic;
    throw ConfigurationError("surfaces", "unknown spacing '" + name + "' (expected uniform or log)");
}

namespace {

std::vector<double> axis(double lo, double hi, std::size_t n, Spacing spacing) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n - 1);
        v[i] = spacing == Spacing::Uniform ? lo + t * (hi - lo) : lo * std::pow(hi / lo, t);
    }
    v.back() = hi;
    return v;
}

void check_range(const char* what, double lo, double hi, std::size_t n) {
    const std::string w(what);
    if (!(lo > 0.0) || !std::isfinite(hi))
        throw ConfigurationError("surfaces", w + ": grid must stay strictly off the diagonal z1 = z2 (need magnitude > 0)");
    if (!(hi > lo)) throw ConfigurationError("surfaces", w + ": max must exceed min");
    if (n < 2) throw ConfigurationError("surfaces", w + ": need at least 2 samples");
}

}  // namespace

void GridSpec::validate() const {
    check_range("z1", z1_min, z1_max, n1);
    check_range("z2", z2_min, z2_max, n2);
}

std::vector<double> GridSpec::axis1() const { return axis(z1_min, z1_max, n1, spacing); }

std::vector<double> GridSpec::axis2() const {
    auto v = axis(z2_min, z2_max, n2, spacing);
    for (auto& x : v) x = -x;
    return v;
}

void CutSpec::validate() const { check_range("cut", z1_min, z1_max, n); }

SurfaceScale surface_scale(const PhysicalParams& params) {
    SurfaceScale s;
    if (params.B0 > 0.0) {
        s.E0 = params.E0();
        s.r0 = params.r0();
        s.natural = true;
    }
    return s;
}

double branch_energy(const PhysicalParams& params, const FieldConfig& config, Branch branch,
                     double z1, double z2) {
    const EigenPair e = eigensystem(two_level_block(params, config, z1, z2));
    return branch == Branch::Minus ? e.e_minus : e.e_plus;
}

PotentialSurface sample_surface(const PhysicalParams& params, const FieldConfig& config, Branch branch,
                                const GridSpec& grid) {
    params.validate();
    config.validate();
    grid.validate();
    PotentialSurface s;
    s.scale = surface_scale(params);
    s.params = params;
    s.config = config;
    s.branch = branch;
    s.z1 = grid.axis1();
    s.z2 = grid.axis2();
    const std::size_t n1 = s.z1.size(), n2 = s.z2.size();
    s.values.assign(n1 * n2, 0.0);
    parallel_for(n1, [&](std::size_t i) {
        for (std::size_t j = 0; j < n2; ++j) {
            const double e = branch_energy(params, config, branch, s.z1[i] * s.scale.r0, s.z2[j] * s.scale.r0);
            s.values[i * n2 + j] = e / s.scale.E0;
        }
    });
    return s;
}

namespace {

double derivative(const std::vector<double>& x, std::size_t i, double e_prev, double e_here, double e_next,
                  bool has_prev, bool has_next) {
    if (has_prev && has_next) return (e_next - e_prev) / (x[i + 1] - x[i - 1]);
    if (has_next) return (e_next - e_here) / (x[i + 1] - x[i]);
    return (e_here - e_prev) / (x[i] - x[i - 1]);
}

}  // namespace

ForceField effective_force(const PotentialSurface& surface) {
    const std::size_t n1 = surface.z1.size(), n2 = surface.z2.size();
    if (n1 < 3 || n2 < 3) throw ConfigurationError("surfaces", "forces need at least 3 samples per axis");
    for (double v : surface.values)
        if (!std::isfinite(v)) throw ConfigurationError("surfaces", "surface contains non-finite values");
    ForceField f;
    f.n1 = n1;
    f.n2 = n2;
    f.f1.resize(n1 * n2);
    f.f2.resize(n1 * n2);
    for (std::size_t i = 0; i < n1; ++i) {
        for (std::size_t j = 0; j < n2; ++j) {
            const bool p1 = i > 0, q1 = i + 1 < n1, p2 = j > 0, q2 = j + 1 < n2;
            const double here = surface.at(i, j);
            f.f1[i * n2 + j] = -derivative(surface.z1, i, p1 ? surface.at(i - 1, j) : 0.0, here,
                                           q1 ? surface.at(i + 1, j) : 0.0, p1, q1);
            f.f2[i * n2 + j] = -derivative(surface.z2, j, p2 ? surface.at(i, j - 1) : 0.0, here,
                                           q2 ? surface.at(i, j + 1) : 0.0, p2, q2);
        }
    }
    for (std::size_t k = 0; k < f.f1.size(); ++k)
        if (!std::isfinite(f.f1[k]) || !std::isfinite(f.f2[k]))
            throw ConfigurationError("surfaces", "force is not finite on the grid");
    return f;
}

Profile diagonal_cut(const PhysicalParams& params, const FieldConfig& config, Branch branch,
                     const CutSpec& spec) {
    params.validate();
    config.validate();
    spec.validate();
    Profile p;
    p.scale = surface_scale(params);
    p.params = params;
    p.config = config;
    p.branch = branch;
    const auto pos = axis(spec.z1_min, spec.z1_max, spec.n, spec.spacing);
    if (spec.mirrored)
        for (auto it = pos.rbegin(); it != pos.rend(); ++it) p.z1.push_back(-*it);
    p.z1.insert(p.z1.end(), pos.begin(), pos.end());
    p.values.resize(p.z1.size());
    for (std::size_t i = 0; i < p.z1.size(); ++i) {
        const double z1 = p.z1[i] * p.scale.r0;
        p.values[i] = branch_energy(params, config, branch, z1, -z1) / p.scale.E0;
    }
    return p;
}

namespace {

void write_header(std::ostream& out, const PhysicalParams& params, const FieldConfig& config,
                  Branch branch, const SurfaceScale& scale, bool clip) {
    out << "# case=" << to_string(config.kind) << " branch=" << to_string(branch) << '\n';
    out << "# mu=" << format_double(params.mu) << " m=" << format_double(params.m)
        << " b=" << format_double(params.b) << " B0=" << format_double(params.B0)
        << " hbar=" << format_double(params.hbar) << " r_c=" << format_double(params.r_c) << '\n';
    out << "# E0=" << format_double(scale.E0) << " r0=" << format_double(scale.r0)
        << " natural_scale=" << (scale.natural ? "true" : "false") << '\n';
    if (clip) out << "# values clipped to +-" << format_double(kClipLimit) << " E0\n";
}

double clipped(double v, bool clip) {
    return clip ? std::clamp(v, -kClipLimit, kClipLimit) : v;
}

}  // namespace

void write_surface_csv(std::ostream& out, const PotentialSurface& s, bool clip) {
    write_header(out, s.params, s.config, s.branch, s.scale, clip);
    out << "z1_over_r0,z2_over_r0,E_over_E0\n";
    for (std::size_t i = 0; i < s.z1.size(); ++i)
        for (std::size_t j = 0; j < s.z2.size(); ++j)
            out << format_double(s.z1[i]) << ',' << format_double(s.z2[j]) << ','
                << format_double(clipped(s.at(i, j), clip)) << '\n';
}

void write_profile_csv(std::ostream& out, const Profile& p, bool clip) {
    write_header(out, p.params, p.config, p.branch, p.scale, clip);
    out << "# diagonal cut z2 = -z1\n";
    out << "z1_over_r0,E_over_E0\n";
    for (std::size_t i = 0; i < p.z1.size(); ++i)
        out << format_double(p.z1[i]) << ',' << format_double(clipped(p.values[i], clip)) << '\n';
}

void write_force_csv(std::ostream& out, const PotentialSurface& s, const ForceField& f) {
    write_header(out, s.params, s.config, s.branch, s.scale, false);
    out << "z1_over_r0,z2_over_r0,F1,F2\n";
    for (std::size_t i = 0; i < s.z1.size(); ++i)
        for (std::size_t j = 0; j < s.z2.size(); ++j)
            out << format_double(s.z1[i]) << ',' << format_double(s.z2[j]) << ','
                << format_double(f.f1_at(i, j)) << ',' << format_double(f.f2_at(i, j)) << '\n';
}

}  // namespace spindip

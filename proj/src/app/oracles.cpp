#include "spindip/app/oracles.hpp"

#include "spindip/numerics/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spindip::oracle {

BlockEigen block_eigen(const PhysicalParams& params, const FieldConfig& config, double z1, double z2) {
    const Eigen::Matrix4cd h = reduced_hamiltonian(params, config, z1, z2).mat;
    const int t = index(Basis::T), s = index(Basis::S);
    Eigen::Matrix2d block;
    block << h(t, t).real(), h(t, s).real(), h(s, t).real(), h(s, s).real();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(block);
    BlockEigen out;
    out.e_minus = es.eigenvalues()(0);
    out.e_plus = es.eigenvalues()(1);
    out.v_minus = es.eigenvectors().col(0);
    out.v_plus = es.eigenvectors().col(1);
    out.scale = std::max(std::abs(out.e_minus), std::abs(out.e_plus));
    return out;
}

double golden_section_argmin(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 500 && (b - a) > rel_tol * std::abs(0.5 * (a + b)); ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

double log_scan_argmin(const std::function<double(double)>& f, double lo, double hi, double rel_tol) {
    const int n = 2000;
    const double step = std::log(hi / lo) / n;
    int best = 0;
    double fbest = f(lo);
    for (int i = 1; i <= n; ++i) {
        const double v = f(lo * std::exp(step * i));
        if (v < fbest) {
            fbest = v;
            best = i;
        }
    }
    const double a = lo * std::exp(step * std::max(0, best - 1));
    const double b = lo * std::exp(step * std::min(n, best + 1));
    return golden_section_argmin(f, a, b, rel_tol);
}

double wkb_action_quadrature(const PhysicalParams& params, double r_m, double E) {
    const double m = params.m, mu2 = params.mu * params.mu, rc = params.r_c;
    auto integrand = [&](double z) {
        const double zz = std::max(z, rc);
        return std::sqrt(std::max(0.0, m * (4.0 * mu2 / (zz * zz * zz) - E)));
    };
    numerics::QuadratureOptions opts;
    opts.abs_tol = 0.0;
    opts.rel_tol = 1e-12;
    // constant plateau inside the cutoff, then geometric panels out to r_m
    double total = rc * integrand(rc);
    double a = rc;
    while (a < r_m) {
        const double b = std::min(r_m, 2.0 * a);
        const auto r = numerics::integrate(integrand, a, b, opts);
        if (!r.converged) throw std::runtime_error("wkb quadrature did not converge");
        total += r.value;
        a = b;
    }
    return total;
}

Eigen::Matrix4d partial_trace_left(const Eigen::Vector2d& ket_ts, const Eigen::Vector2d& bra_ts) {
    // one-particle labels: 0 = +L, 1 = -L, 2 = +R, 3 = -R
    auto label = [](int spin, int side) { return 2 * side + spin; };
    const double r2 = 1.0 / std::sqrt(2.0);
    auto build = [&](const Eigen::Vector2d& ts) {
        Eigen::Matrix<double, 16, 1> psi = Eigen::Matrix<double, 16, 1>::Zero();
        for (int s1 = 0; s1 < 2; ++s1) {
            for (int s2 = 0; s2 < 2; ++s2) {
                if (s1 == s2) continue;
                // spin parts: T = (+- + -+)/sqrt2, S = (+- - -+)/sqrt2
                const double spin_T = r2;
                const double spin_S = s1 == 0 ? r2 : -r2;
                // spatial parts: T ~ (L1 R2 - R1 L2)/sqrt2, S ~ (L1 R2 + R1 L2)/sqrt2
                for (int side1 = 0; side1 < 2; ++side1) {
                    const int side2 = 1 - side1;
                    const double sp_T = side1 == 0 ? r2 : -r2;
                    const double sp_S = r2;
                    const int idx = label(s1, side1) * 4 + label(s2, side2);
                    psi(idx) += ts(0) * spin_T * sp_T + ts(1) * spin_S * sp_S;
                }
            }
        }
        return psi;
    };
    const auto ket = build(ket_ts), bra = build(bra_ts);
    const Eigen::Matrix<double, 16, 16> full = ket * bra.transpose();
    Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
    // particle 1 on the left, trace over particle 2's right-side labels
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int r = 2; r < 4; ++r) rho(a, b) += full(a * 4 + r, b * 4 + r);
    // particle 2 on the left, trace over particle 1's right-side labels
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int r = 2; r < 4; ++r) rho(2 + a, 2 + b) += full(r * 4 + a, r * 4 + b);
    return rho;
}

double spin_flip_concurrence(const Eigen::Vector4cd& a) {
    Eigen::Matrix2cd sy;
    sy << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    Eigen::Matrix4cd yy;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) yy.block<2, 2>(2 * i, 2 * j) = sy(i, j) * sy;
    const Eigen::Vector4cd flipped = yy * a.conjugate();
    return std::abs(a.dot(flipped));
}

GaussianPairQuadrature gaussian_pair_quadrature(const TrapConfig& trap) {
    trap.validate();
    const double xi = trap.xi();
    const double c = 0.5 * trap.z0;
    const double width = 14.0 / std::sqrt(xi);
    const double lo = -c - width, hi = c + width;
    numerics::QuadratureOptions opts;
    opts.abs_tol = 1e-15;
    opts.rel_tol = 1e-12;
    auto integrate = [&](const std::function<double(double)>& f, double a, double b) {
        const auto r = numerics::integrate(f, a, b, opts);
        if (!r.converged) throw std::runtime_error("gaussian quadrature did not converge");
        return r.value;
    };
    // unnormalised 1D packets and their derivatives
    auto g = [&](double z, double center) { return std::exp(-0.5 * xi * (z - center) * (z - center)); };
    auto dg = [&](double z, double center) { return -xi * (z - center) * g(z, center); };
    auto integrate2d = [&](const std::function<double(double, double)>& f) {
        return integrate([&](double z1) { return integrate([&](double z2) { return f(z1, z2); }, lo, hi); }, lo, hi);
    };

    GaussianPairQuadrature q;
    const double tn = integrate([&](double x) { return g(x, 0.0) * g(x, 0.0); }, -width, width);
    const double tn4 = integrate([&](double x) { return std::pow(g(x, 0.0), 4); }, -width, width);
    const double zn = integrate([&](double z) { return g(z, c) * g(z, c); }, lo, hi);
    q.norm_R = [&] {
        const double norm_const = std::pow(xi / std::numbers::pi, 1.5);
        return norm_const * tn * tn * zn;
    }();
    q.overlap = integrate([&](double z) { return g(z, c) * g(z, -c); }, lo, hi) / zn;

    for (int sign : {+1, -1}) {
        auto psi = [&](double z1, double z2) { return g(z1, c) * g(z2, -c) + sign * g(z1, -c) * g(z2, c); };
        auto d1 = [&](double z1, double z2) { return dg(z1, c) * g(z2, -c) + sign * dg(z1, -c) * g(z2, c); };
        auto d2 = [&](double z1, double z2) { return g(z1, c) * dg(z2, -c) + sign * g(z1, -c) * dg(z2, c); };
        const double norm = integrate2d([&](double a, double b) { return psi(a, b) * psi(a, b); });
        const double contact = integrate([&](double z) { return psi(z, z) * psi(z, z); }, lo, hi);
        const double pp = integrate2d([&](double a, double b) {
            const double v = d1(a, b) + d2(a, b);
            return v * v;
        });
        const double pm = integrate2d([&](double a, double b) {
            const double v = d1(a, b) - d2(a, b);
            return v * v;
        });
        // transverse factor of the contact term: int g^4 / (int g^2)^2 per axis
        const double transverse = (tn4 / (tn * tn)) * (tn4 / (tn * tn));
        const double delta = transverse * contact / norm;
        const double hb2 = trap.hbar * trap.hbar;
        const double com = hb2 * (pp / norm) / (2.0 * trap.mass);
        const double rel = hb2 * 0.25 * (pm / norm) / trap.mass;
        if (sign > 0) {
            q.delta_plus = delta;
            q.com_plus = com;
            q.rel_plus = rel;
            q.mean_relative = integrate2d([&](double a, double b) { return (a - b) * psi(a, b) * psi(a, b); }) / norm;
            q.mean_center = integrate2d([&](double a, double b) { return 0.5 * (a + b) * psi(a, b) * psi(a, b); }) / norm;
        } else {
            q.delta_minus = delta;
            q.com_minus = com;
            q.rel_minus = rel;
        }
    }
    return q;
}

}  // namespace spindip::oracle

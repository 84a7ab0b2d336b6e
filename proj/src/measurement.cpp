#include "spindip/measurement.hpp"

#include "spindip/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace spindip {

bool LeftDensityMatrix::is_hermitian(double tol) const {
    return (mat - mat.transpose()).cwiseAbs().maxCoeff() <= tol;
}

bool LeftDensityMatrix::is_positive_semidefinite(double tol) const {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(0.5 * (mat + mat.transpose()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol;
}

namespace {

// Per-particle pattern on one side: weight of |+> and |->.
LeftDensityMatrix from_pattern(double plus, double minus) {
    LeftDensityMatrix r;
    r.mat.diagonal() << plus, minus, plus, minus;
    return r;
}

}  // namespace

LeftDensityMatrix rho_left(RhoSource source, double theta) {
    switch (source) {
        case RhoSource::Singlet:
        case RhoSource::Triplet:
            return from_pattern(0.25, 0.25);
        case RhoSource::TSCross:
            return from_pattern(0.25, -0.25);
        case RhoSource::MinusA: {
            const double s = std::sin(theta);
            LeftDensityMatrix r = rho_left(RhoSource::Singlet);
            r.mat -= s * rho_left(RhoSource::TSCross).mat;
            return r;
        }
    }
    return {};
}

LeftDensityMatrix rho_right(RhoSource source, double theta) {
    // Tr_L |T><S| flips sign relative to the left side.
    switch (source) {
        case RhoSource::Singlet:
        case RhoSource::Triplet:
            return from_pattern(0.25, 0.25);
        case RhoSource::TSCross:
            return from_pattern(-0.25, 0.25);
        case RhoSource::MinusA: {
            LeftDensityMatrix r = rho_right(RhoSource::Singlet);
            r.mat -= std::sin(theta) * rho_right(RhoSource::TSCross).mat;
            return r;
        }
    }
    return {};
}

Eigen::Matrix4d side_sz_operator() {
    return Eigen::Vector4d(0.5, -0.5, 0.5, -0.5).asDiagonal();
}

Eigen::Matrix4d side_sx_operator() {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 1) = m(1, 0) = 0.5;
    m(2, 3) = m(3, 2) = 0.5;
    return m;
}

Eigen::Matrix4cd side_sy_operator() {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    const Complex i(0.0, 1.0);
    m(0, 1) = m(2, 3) = -0.5 * i;
    m(1, 0) = m(3, 2) = 0.5 * i;
    return m;
}

namespace {

MeasurementPrediction predict(const LeftDensityMatrix& rho, double theta) {
    MeasurementPrediction p;
    p.theta = theta;
    p.expectation_sz = rho.expectation(side_sz_operator());
    // Probability of +1/2 for the particle found on this side.
    p.p_plus = rho.mat(0, 0) + rho.mat(2, 2);
    p.p_minus = rho.mat(1, 1) + rho.mat(3, 3);
    return p;
}

}  // namespace

MeasurementPrediction protective_expectation(double theta) {
    return predict(rho_left(RhoSource::MinusA, theta), theta);
}

MeasurementPrediction protective_expectation_right(double theta) {
    return predict(rho_right(RhoSource::MinusA, theta), theta);
}

TransverseSpin transverse_expectations(double theta) {
    const LeftDensityMatrix rho = rho_left(RhoSource::MinusA, theta);
    TransverseSpin t;
    t.sx = rho.expectation(side_sx_operator());
    t.sy = (rho.mat.cast<Complex>() * side_sy_operator()).trace().real();
    return t;
}

Eigen::Vector4cd minus_a_product_amplitudes(double theta) {
    SpinVector v;
    v.amps(index(Basis::T)) = -std::sin(0.5 * theta);
    v.amps(index(Basis::S)) = std::cos(0.5 * theta);
    return v.product_amplitudes();
}

double spin_concurrence(double theta) {
    const Eigen::Vector4cd a = minus_a_product_amplitudes(theta);
    return 2.0 * std::abs(a(0) * a(3) - a(1) * a(2));
}

MeasurementSample standard_measurement_simulation(double theta, std::uint64_t n_trials,
                                                  std::uint64_t seed) {
    if (n_trials == 0) throw ConfigurationError("measurement", "n_trials must be at least 1");
    const MeasurementPrediction pred = protective_expectation(theta);
    std::mt19937_64 rng(seed);
    MeasurementSample s;
    s.n_trials = n_trials;
    for (std::uint64_t k = 0; k < n_trials; ++k) {
        // 53 random bits -> [0, 1); independent of the library's distributions
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (u < pred.p_plus) ++s.n_plus;
        else ++s.n_minus;
    }
    const double n = static_cast<double>(n_trials);
    s.mean = 0.5 * (static_cast<double>(s.n_plus) - static_cast<double>(s.n_minus)) / n;
    s.standard_error = std::sqrt(std::max(0.0, pred.p_plus * pred.p_minus)) / std::sqrt(n);
    return s;
}

double mixing_angle(const PhysicalParams& params, const FieldConfig& config, double z1, double z2) {
    return two_level_block(params, config, z1, z2).angle;
}

bool protectable(const PhysicalParams& params, const FieldConfig& config, double z1, double z2) {
    const TwoLevelBlock block = two_level_block(params, config, z1, z2);
    if (block.f == 0.0 || block.coupling == 0.0) return false;
    const LevelCrossingReport report = level_crossing_check(params, config, z1, z2);
    if (!report.ok) return false;
    for (double m : report.margins)
        if (!(m > 0.0)) return false;
    return true;
}

}  // namespace spindip

#include "spindip/numerics/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace spindip::numerics {

double beta(double a, double b) {
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

namespace {

// Continued fraction for I_x(a,b) * a B(a,b) / (x^a (1-x)^b); converges fast
// for x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIter = 500;
    constexpr double kEps = 1e-16;
    const double tiny = std::numeric_limits<double>::min() / kEps;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return h;
    }
    throw std::runtime_error("incomplete beta continued fraction did not converge");
}

}  // namespace

double incomplete_beta_unnormalized(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("incomplete beta requires a, b > 0");
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("incomplete beta requires x in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return beta(a, b);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        const double front = std::exp(a * std::log(x) + b * std::log1p(-x));
        return front * beta_continued_fraction(a, b, x) / a;
    }
    const double front = std::exp(b * std::log1p(-x) + a * std::log(x));
    return beta(a, b) - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

}  // namespace spindip::numerics

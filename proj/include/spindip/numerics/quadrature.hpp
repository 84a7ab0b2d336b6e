#pragma once

#include <functional>

namespace spindip::numerics {

struct QuadratureOptions {
    double abs_tol = 1e-13;
    double rel_tol = 1e-11;
    int max_intervals = 4000;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
    bool converged = false;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration over a finite [a, b].
/// The interval with the largest error estimate is bisected until the total
/// estimate meets max(abs_tol, rel_tol * |I|).
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts = {});

}  // namespace spindip::numerics

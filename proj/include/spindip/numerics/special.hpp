#pragma once

namespace spindip::numerics {

/// Complete beta function B(a, b).
double beta(double a, double b);

/// Unnormalised incomplete beta B_x(a, b) = int_0^x t^{a-1} (1-t)^{b-1} dt,
/// evaluated with the modified-Lentz continued fraction. a, b > 0, x in [0, 1].
double incomplete_beta_unnormalized(double a, double b, double x);

}  // namespace spindip::numerics

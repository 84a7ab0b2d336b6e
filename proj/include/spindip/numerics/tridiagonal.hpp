#pragma once

#include <cstddef>
#include <vector>

namespace spindip::numerics {

/// Real symmetric tridiagonal matrix: diag has n entries, off has n - 1.
struct SymmetricTridiagonal {
    std::vector<double> diag;
    std::vector<double> off;

    std::size_t size() const { return diag.size(); }
    /// y = T x
    std::vector<double> apply(const std::vector<double>& x) const;
    /// max row sum of |T|
    double norm_inf() const;
};

/// Number of eigenvalues strictly below x (Sturm sequence count).
std::size_t sturm_count(const SymmetricTridiagonal& t, long double x);

struct EigenPairResult {
    double value = 0.0;
    std::vector<double> vector;  ///< unit 2-norm
    double residual = 0.0;       ///< ||T v - value v||_2
};

/// The `count` smallest eigenpairs in ascending order: bisection on the Sturm
/// count for the values, then inverse iteration (partial-pivoting tridiagonal
/// LU) for the vectors, reorthogonalised inside clusters.
std::vector<EigenPairResult> lowest_eigenpairs(const SymmetricTridiagonal& t, std::size_t count);

}  // namespace spindip::numerics

#include "spindip/numerics/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace spindip::numerics {

std::vector<double> SymmetricTridiagonal::apply(const std::vector<double>& x) const {
    const std::size_t n = size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        long double acc = static_cast<long double>(diag[i]) * x[i];
        if (i > 0) acc += static_cast<long double>(off[i - 1]) * x[i - 1];
        if (i + 1 < n) acc += static_cast<long double>(off[i]) * x[i + 1];
        y[i] = static_cast<double>(acc);
    }
    return y;
}

double SymmetricTridiagonal::norm_inf() const {
    double best = 0.0;
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        double row = std::abs(diag[i]);
        if (i > 0) row += std::abs(off[i - 1]);
        if (i + 1 < n) row += std::abs(off[i]);
        best = std::max(best, row);
    }
    return best;
}

std::size_t sturm_count(const SymmetricTridiagonal& t, long double x) {
    const std::size_t n = t.size();
    const long double tiny = std::numeric_limits<long double>::min() / std::numeric_limits<long double>::epsilon();
    std::size_t count = 0;
    long double q = 1.0L;
    for (std::size_t i = 0; i < n; ++i) {
        const long double e2 = i > 0 ? static_cast<long double>(t.off[i - 1]) * t.off[i - 1] : 0.0L;
        q = static_cast<long double>(t.diag[i]) - x - (i > 0 ? e2 / q : 0.0L);
        if (q == 0.0L) q = -tiny;
        if (q < 0.0L) ++count;
    }
    return count;
}

namespace {

// LU factorisation with partial pivoting of (T - shift), LAPACK dgttrf layout.
struct TridiagonalLU {
    std::vector<double> dl, d, du, du2;
    std::vector<bool> swapped;

    TridiagonalLU(const SymmetricTridiagonal& t, double shift, double pivot_floor) {
        const std::size_t n = t.size();
        d.resize(n);
        for (std::size_t i = 0; i < n; ++i) d[i] = t.diag[i] - shift;
        dl = t.off;
        du = t.off;
        du2.assign(n > 2 ? n - 2 : 0, 0.0);
        swapped.assign(n > 1 ? n - 1 : 0, false);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::abs(d[i]) >= std::abs(dl[i])) {
                if (d[i] != 0.0) {
                    const double fact = dl[i] / d[i];
                    dl[i] = fact;
                    d[i + 1] -= fact * du[i];
                }
            } else {
                const double fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                const double temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if (i + 2 < n) {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        for (auto& p : d)
            if (std::abs(p) < pivot_floor) p = std::copysign(pivot_floor, p == 0.0 ? 1.0 : p);
    }

    void solve(std::vector<double>& b) const {
        const std::size_t n = d.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (!swapped[i]) {
                b[i + 1] -= dl[i] * b[i];
            } else {
                const double temp = b[i] - dl[i] * b[i + 1];
                b[i] = b[i + 1];
                b[i + 1] = temp;
            }
        }
        b[n - 1] /= d[n - 1];
        if (n < 2) return;
        b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
        for (std::size_t k = n - 2; k-- > 0;)
            b[k] = (b[k] - du[k] * b[k + 1] - du2[k] * b[k + 2]) / d[k];
    }
};

double norm2(const std::vector<double>& v) {
    long double s = 0.0L;
    for (double x : v) s += static_cast<long double>(x) * x;
    return static_cast<double>(std::sqrt(s));
}

long double dot(const std::vector<double>& a, const std::vector<double>& b) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long double>(a[i]) * b[i];
    return s;
}

}  // namespace

std::vector<EigenPairResult> lowest_eigenpairs(const SymmetricTridiagonal& t, std::size_t count) {
    const std::size_t n = t.size();
    if (n == 0 || t.off.size() + 1 != n) throw std::invalid_argument("malformed tridiagonal matrix");
    count = std::min(count, n);

    // Gershgorin interval
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(t.off[i - 1]);
        if (i + 1 < n) r += std::abs(t.off[i]);
        lo = std::min(lo, t.diag[i] - r);
        hi = std::max(hi, t.diag[i] + r);
    }
    const double tnorm = std::max(t.norm_inf(), std::numeric_limits<double>::min());
    const long double eps = std::numeric_limits<long double>::epsilon();

    std::vector<double> values(count);
    for (std::size_t j = 0; j < count; ++j) {
        long double a = lo - 1e-12 * tnorm;
        long double b = hi + 1e-12 * tnorm;
        for (int it = 0; it < 200; ++it) {
            const long double mid = 0.5L * (a + b);
            if (mid <= a || mid >= b) break;
            if (b - a <= 4.0L * eps * std::max(std::abs(a), std::abs(b))) break;
            if (sturm_count(t, mid) > j) b = mid;
            else a = mid;
        }
        values[j] = static_cast<double>(0.5L * (a + b));
    }

    const double pivot_floor = std::numeric_limits<double>::epsilon() * tnorm;
    const double cluster_gap = 1e-3 * tnorm;
    std::vector<EigenPairResult> out(count);
    for (std::size_t j = 0; j < count; ++j) {
        const TridiagonalLU lu(t, values[j], pivot_floor);
        // deterministic start vector with no special symmetry
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i) + 0.3 * j);
        std::size_t first_in_cluster = j;
        while (first_in_cluster > 0 && values[j] - values[first_in_cluster - 1] < cluster_gap) --first_in_cluster;

        for (int it = 0; it < 5; ++it) {
            double nv = norm2(v);
            for (auto& x : v) x /= nv;
            lu.solve(v);
            for (std::size_t k = first_in_cluster; k < j; ++k) {
                const long double p = dot(v, out[k].vector);
                for (std::size_t i = 0; i < n; ++i) v[i] -= static_cast<double>(p * out[k].vector[i]);
            }
        }
        const double nv = norm2(v);
        for (auto& x : v) x /= nv;

        const auto tv = t.apply(v);
        long double r2 = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            const long double r = static_cast<long double>(tv[i]) - static_cast<long double>(values[j]) * v[i];
            r2 += r * r;
        }
        out[j].value = values[j];
        out[j].vector = std::move(v);
        out[j].residual = static_cast<double>(std::sqrt(r2));
    }
    return out;
}

}  // namespace spindip::numerics

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace testing {

// Seeded generator for property tests; draws are platform-independent.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}
    double uniform(double a, double b) { return a + (b - a) * (static_cast<double>(rng_() >> 11) * 0x1.0p-53); }
    double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }
    bool coin() { return (rng_() >> 63) != 0; }

private:
    std::mt19937_64 rng_;
};

inline double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace testing

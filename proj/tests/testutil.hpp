#pragma once

#include <complex>
#include <random>

#include <Eigen/Dense>

namespace testutil {

// Deterministic uniform doubles; avoids std::uniform_real_distribution,
// whose output is not pinned across standard libraries.
struct Rng {
    std::mt19937_64 gen;

    explicit Rng(std::uint64_t seed) : gen(seed) {}

    double unit() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    Eigen::Matrix2d symmetric(double lo = -1.0, double hi = 1.0) {
        Eigen::Matrix2d m;
        double a = uniform(lo, hi), b = uniform(lo, hi), c = uniform(lo, hi);
        m << a, b, b, c;
        return m;
    }
};

inline double dist(std::complex<double> a, std::complex<double> b) { return std::abs(a - b); }

}  // namespace testutil

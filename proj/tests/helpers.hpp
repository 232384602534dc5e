#ifndef QSPSKT_TESTS_HELPERS_HPP
#define QSPSKT_TESTS_HELPERS_HPP

#include <cmath>
#include <random>
#include <vector>

#include "qspskt/su2.hpp"

namespace qspskt_tests {

/// Least-squares slope of log(y) against log(x); the workhorse for the
/// scaling-law oracles.
inline double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double lx = std::log(xs[i]), ly = std::log(std::max(ys[i], 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Independent operator-norm oracle: largest singular value via the explicit
/// quadratic formula on the eigenvalues of (M^dag M), written without reusing
/// the library's op_norm internals.
inline double opnorm_oracle(const qspskt::Unitary2& m) {
    using C = qspskt::Complex;
    // Gram matrix G = M^dag M = [[g00, g01], [g01*, g11]] (Hermitian).
    C g00 = std::conj(m.a) * m.a + std::conj(m.c) * m.c;
    C g01 = std::conj(m.a) * m.b + std::conj(m.c) * m.d;
    C g11 = std::conj(m.b) * m.b + std::conj(m.d) * m.d;
    double tr = g00.real() + g11.real();
    double det = (g00 * g11 - g01 * std::conj(g01)).real();
    double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
    return std::sqrt(std::max(0.0, 0.5 * (tr + disc)));
}

inline qspskt::Unitary2 random_su2(std::mt19937_64& rng) { return qspskt::haar_random(rng); }

/// Uniform grid on [-1, 1].
inline std::vector<double> uniform_grid(int n) {
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = -1.0 + 2.0 * i / (n - 1);
    return xs;
}

/// Chebyshev value by the three-term recurrence (independent of ChebSeries).
inline double chebyshev_T(int k, double x) {
    double t0 = 1.0, t1 = x;
    if (k == 0) return t0;
    if (k == 1) return t1;
    for (int i = 2; i <= k; ++i) {
        double t2 = 2.0 * x * t1 - t0;
        t0 = t1;
        t1 = t2;
    }
    return t1;
}

}  // namespace qspskt_tests

#endif

#include "qspskt/words.hpp"

#include <algorithm>
#include <cmath>

namespace qspskt {

BigInt balanced_count(int r) {
    if (r < 0) fail_precondition("balanced_count: r must be >= 0");
    BigInt num = 1;
    for (int i = 1; i <= r; ++i) {
        num *= (r + i);
        num /= i;  // exact at every step: C(r+i, i) is integral
    }
    return num;
}

namespace {

/// Truncated trivariate series with integer coefficients, indexed by
/// (t-degree, u-degree, v-degree); t-degree capped at tmax.
struct Series {
    int tmax, umax, vmax;
    std::vector<BigInt> c;

    Series(int t, int u, int v) : tmax(t), umax(u), vmax(v) {
        c.assign(static_cast<std::size_t>((t + 1) * (u + 1) * (v + 1)), BigInt(0));
    }
    BigInt& at(int t, int u, int v) {
        return c[static_cast<std::size_t>((t * (umax + 1) + u) * (vmax + 1) + v)];
    }
    const BigInt& at(int t, int u, int v) const {
        return c[static_cast<std::size_t>((t * (umax + 1) + u) * (vmax + 1) + v)];
    }
};

/// Inverse of a series with constant term 1, order by order:
/// g(t,u,v) = -sum over nonzero splits of a * g.
Series invert(const Series& a) {
    Series out(a.tmax, a.umax, a.vmax);
    out.at(0, 0, 0) = 1;
    for (int t = 0; t <= a.tmax; ++t)
        for (int u = 0; u <= a.umax; ++u)
            for (int v = 0; v <= a.vmax; ++v) {
                if (t == 0 && u == 0 && v == 0) continue;
                BigInt acc = 0;
                for (int t1 = 0; t1 <= t; ++t1)
                    for (int u1 = 0; u1 <= u; ++u1)
                        for (int v1 = 0; v1 <= v; ++v1) {
                            if (t1 == 0 && u1 == 0 && v1 == 0) continue;
                            acc += a.at(t1, u1, v1) * out.at(t - t1, u - u1, v - v1);
                        }
                out.at(t, u, v) = -acc;
            }
    return out;
}

}  // namespace

BigInt constrained_count(int r, int eta) {
    if (r < 0 || eta < 1) fail_precondition("constrained_count: need r >= 0, eta >= 1");
    if (r == 0) return 1;
    const int tmax = 2 * r, umax = r, vmax = r;
    // A = 1/S - t v with S = sum_{i<eta} (tu)^i, i.e.
    // A = (1 - tu) sum_m (tu)^{eta m} - t v, all integer coefficients.
    Series a(tmax, umax, vmax);
    for (int m = 0; eta * m <= std::min(tmax, umax); ++m) {
        int d = eta * m;
        a.at(d, d, 0) += 1;
        if (d + 1 <= std::min(tmax, umax)) a.at(d + 1, d + 1, 0) -= 1;
    }
    if (vmax >= 1 && tmax >= 1) a.at(1, 0, 1) -= 1;
    if (a.at(0, 0, 0) != 1) throw Error(ErrorCode::Internal, "series inversion needs unit constant");
    Series g = invert(a);
    return g.at(2 * r, r, r);
}

BigInt constrained_count_brute(int r, int eta) {
    if (r < 0 || eta < 1) fail_precondition("constrained_count_brute: need r >= 0, eta >= 1");
    const int len = 2 * r;
    if (len >= 30) fail_precondition("constrained_count_brute: r too large for enumeration");
    BigInt count = 0;
    for (std::uint32_t mask = 0; mask < (1u << len); ++mask) {
        if (__builtin_popcount(mask) != r) continue;  // r ones
        int run = 0, worst = 0;
        for (int i = 0; i < len; ++i) {
            if (mask & (1u << i)) {
                run = 0;
            } else {
                ++run;
                worst = std::max(worst, run);
            }
        }
        if (worst < eta) ++count;
    }
    return count;
}

WordLengthEstimate expected_word_length(double xi, double eps, int alphabet, double c0,
                                        double c1) {
    if (xi <= 0 || eps <= 0 || eps >= 1 || alphabet < 2) {
        fail_precondition("expected_word_length: need xi > 0, eps in (0,1), alphabet >= 2");
    }
    WordLengthEstimate est;
    const double log_a = std::log(static_cast<double>(alphabet));
    est.leading = (c1 * xi / eps) / log_a;
    est.polylog = (std::log(1.0 / (c0 * xi * eps)) + 2.0 * std::log(1.0 / eps)) / log_a;
    est.n = est.leading + est.polylog;
    return est;
}

}  // namespace qspskt

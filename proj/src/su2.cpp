#include "qspskt/su2.hpp"

#include <algorithm>
#include <cmath>

namespace qspskt {

namespace {

double sq(double v) { return v * v; }

}  // namespace

Unitary2 Unitary2::special_unitary(Complex a, Complex b, Complex c, Complex d) {
    Unitary2 u{a, b, c, d};
    if (!u.is_special_unitary()) {
        fail_precondition("matrix is not special-unitary within tolerance");
    }
    return u;
}

double Unitary2::unitarity_defect() const {
    Unitary2 g = dagger() * (*this);
    g.a -= 1.0;
    g.d -= 1.0;
    return op_norm(g);
}

double op_norm(const Unitary2& m) {
    // Largest singular value from the Gram-matrix invariants: with
    // T = sum |m_ij|^2 and |det|, sigma_max = (sqrt(T + 2|det|) +
    // sqrt(T - 2|det|)) / 2. Equivalent to the quadratic formula on the
    // eigenvalues of M^dag M but without the discriminant cancellation.
    double t = std::norm(m.a) + std::norm(m.b) + std::norm(m.c) + std::norm(m.d);
    double d = std::abs(m.det());
    double plus = std::sqrt(std::max(0.0, t + 2.0 * d));
    double minus = std::sqrt(std::max(0.0, t - 2.0 * d));
    return 0.5 * (plus + minus);
}

double distance(const Unitary2& a, const Unitary2& b) { return op_norm(a - b); }

double distance_up_to_phase(const Unitary2& a, const Unitary2& b) {
    return std::min(op_norm(a - b), op_norm(a + b));
}

Unitary2 canonical_phase(const Unitary2& u, double eps) {
    const double keys[4] = {u.a.real(), u.a.imag(), u.b.real(), u.b.imag()};
    for (double k : keys) {
        if (std::abs(k) > eps) {
            return k < 0 ? u * Complex{-1.0, 0.0} : u;
        }
    }
    return u;
}

Unitary2 rotation(const std::array<double, 3>& axis, double angle) {
    double n = std::sqrt(sq(axis[0]) + sq(axis[1]) + sq(axis[2]));
    if (std::abs(n - 1.0) > 1e-9) {
        fail_precondition("rotation axis must be unit length");
    }
    double cs = std::cos(angle), sn = std::sin(angle);
    double nx = axis[0] / n, ny = axis[1] / n, nz = axis[2] / n;
    return Unitary2::raw({cs, sn * nz}, {sn * ny, sn * nx}, {-sn * ny, sn * nx},
                         {cs, -sn * nz});
}

std::array<double, 3> bloch_sin_vector(const Unitary2& u) {
    Unitary2 k = (u - u.dagger()) * Complex{0.5, 0.0};
    // k = i (vx sx + vy sy + vz sz): k01 = i vx + vy, k00 = i vz.
    return {k.b.imag(), k.b.real(), k.a.imag()};
}

PauliForm pauli_form(const Unitary2& u) {
    double re_a = std::clamp(0.5 * (u.a.real() + u.d.real()), -1.0, 1.0);
    auto v = bloch_sin_vector(u);
    double vn = std::sqrt(sq(v[0]) + sq(v[1]) + sq(v[2]));
    PauliForm p;
    // theta = arccos(Re a); computed as atan2(|sin theta|, cos theta), which
    // stays well-conditioned at theta near 0 and pi where arccos is not.
    p.theta = std::atan2(vn, re_a);
    if (vn > 1e-12) {
        p.axis = {v[0] / vn, v[1] / vn, v[2] / vn};
    } else {
        p.axis = {0.0, 0.0, 1.0};  // theta ~ 0 or pi: axis is immaterial
    }
    return p;
}

Unitary2 from_pauli(const PauliForm& p) { return rotation(p.axis, p.theta); }

Unitary2 group_commutator(const Unitary2& a, const Unitary2& b) {
    return a * b * a.dagger() * b.dagger();
}

Unitary2 haar_random(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    double q0 = g(rng), q1 = g(rng), q2 = g(rng), q3 = g(rng);
    double n = std::sqrt(sq(q0) + sq(q1) + sq(q2) + sq(q3));
    q0 /= n;
    q1 /= n;
    q2 /= n;
    q3 /= n;
    // U = q0 I + i(q1 sx + q2 sy + q3 sz)
    return Unitary2::raw({q0, q3}, {q2, q1}, {-q2, q1}, {q0, -q3});
}

}  // namespace qspskt

#ifndef QSPSKT_SU2_HPP
#define QSPSKT_SU2_HPP

#include <array>
#include <cstdint>
#include <random>

#include "qspskt/common.hpp"

namespace qspskt {

/**
 * A 2x2 complex matrix, normally special-unitary.
 *
 * Stored as four complex entries (row major) rather than a quaternion so the
 * same type can carry the occasional non-unitary value (leading-order
 * predictions, differences, averaged blocks). Constructors that promise
 * unitarity check it against Tolerances::unitarity.
 */
struct Unitary2 {
    Complex a{1.0, 0.0}, b{0.0, 0.0}, c{0.0, 0.0}, d{1.0, 0.0};

    static Unitary2 identity() { return {}; }
    static Unitary2 raw(Complex a, Complex b, Complex c, Complex d) { return {a, b, c, d}; }
    /// Checked factory: rejects matrices violating the unitary invariants.
    static Unitary2 special_unitary(Complex a, Complex b, Complex c, Complex d);

    Unitary2 operator*(const Unitary2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Unitary2 operator+(const Unitary2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    Unitary2 operator-(const Unitary2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    Unitary2 operator*(Complex s) const { return {s * a, s * b, s * c, s * d}; }

    Unitary2 dagger() const {
        return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)};
    }
    Unitary2 transpose() const { return {a, c, b, d}; }
    /// Entrywise complex conjugate. For SU(2) this equals sigma_y U sigma_y.
    Unitary2 conjugate() const {
        return {std::conj(a), std::conj(b), std::conj(c), std::conj(d)};
    }

    Complex det() const { return a * d - b * c; }
    Complex trace() const { return a + d; }

    double unitarity_defect() const;  // ||U^dag U - I||_op
    double det_defect() const { return std::abs(det() - Complex{1.0, 0.0}); }
    bool is_special_unitary(double eps = tol().unitarity) const {
        return unitarity_defect() <= eps && det_defect() <= eps;
    }
};

inline Unitary2 pauli_x() { return Unitary2::raw({0, 0}, {1, 0}, {1, 0}, {0, 0}); }
inline Unitary2 pauli_y() { return Unitary2::raw({0, 0}, {0, -1}, {0, 1}, {0, 0}); }
inline Unitary2 pauli_z() { return Unitary2::raw({1, 0}, {0, 0}, {0, 0}, {-1, 0}); }

/// Rotation-angle/axis form: U = exp(i theta (axis . sigma)), theta in [0, pi],
/// axis a unit 3-vector. When theta is numerically zero the axis is the
/// canonical z.
struct PauliForm {
    double theta = 0.0;
    std::array<double, 3> axis{0.0, 0.0, 1.0};
};

/// exp(i angle (axis . sigma)). The axis must be unit to 1e-9.
Unitary2 rotation(const std::array<double, 3>& axis, double angle);

/// Inverse of rotation(): recovers (theta, axis) with theta = arccos(Re a).
/// Near theta in {0, pi} the axis is read from the anti-Hermitian part of U
/// directly instead of dividing by sin(theta).
PauliForm pauli_form(const Unitary2& u);

Unitary2 from_pauli(const PauliForm& p);

/// Operator norm (largest singular value) of an arbitrary 2x2 matrix,
/// computed in closed form from the Gram-matrix eigenvalues.
double op_norm(const Unitary2& m);

/// Operator-norm distance ||A - B||.
double distance(const Unitary2& a, const Unitary2& b);

/// min(||A - B||, ||A + B||): distance on the rotation group, identifying the
/// two SU(2) representatives of the same rotation.
double distance_up_to_phase(const Unitary2& a, const Unitary2& b);

/// Flips the global sign so that the first component of
/// (Re a, Im a, Re b, Im b) exceeding `eps` in magnitude is positive.
/// Comparisons of SU(2) values modulo sign use this representative.
Unitary2 canonical_phase(const Unitary2& u, double eps = 1e-14);

/// A B A^dag B^dag.
Unitary2 group_commutator(const Unitary2& a, const Unitary2& b);

/// Haar-uniform SU(2) sample.
Unitary2 haar_random(std::mt19937_64& rng);

/// Bloch components of the anti-Hermitian part: v with
/// (U - U^dag)/2 = i (v . sigma). Equals sin(theta) * axis for unitaries.
std::array<double, 3> bloch_sin_vector(const Unitary2& u);

}  // namespace qspskt

#endif

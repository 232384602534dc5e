#include "qspskt/commutator.hpp"

#include <cmath>

namespace qspskt {

PlanarQuadruple planar_quadruple(const Protocol& v0, const Protocol& v1) {
    for (const Protocol* v : {&v0, &v1}) {
        auto rep = check_symmetric(*v, default_grid(*v), tol().structure);
        if (!rep.pass) {
            fail_precondition("planar_quadruple: input is not symmetric (deviation " +
                              std::to_string(rep.max_deviation) + ")");
        }
    }
    PlanarQuadruple q;
    q.u0 = conjugate(v0, plane_gate_x());
    q.u1 = conjugate(v1, plane_gate_z());
    q.u2 = conjugate_entrywise(q.u0);
    q.u3 = conjugate_entrywise(q.u1);
    return q;
}

Protocol protocol_commutator(const Protocol& a, const Protocol& b) {
    return concat(concat(a, b), concat(inverse(a), inverse(b)));
}

Protocol nested_commutator(const PlanarQuadruple& q) {
    Protocol g0 = protocol_commutator(q.u0, q.u1);
    Protocol g1 = protocol_commutator(q.u2, q.u3);
    return concat(concat(g0, g1), concat(inverse(g0), inverse(g1)));
}

Unitary2 leading_order_prediction(const ChebSeries& p0, const ChebSeries& q0,
                                  const ChebSeries& p1, const ChebSeries& q1, double x,
                                  double eps) {
    if (std::abs(x) > 1.0) fail_precondition("leading_order_prediction: |x| <= 1 required");
    const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
    // Components of the eps-scaled constituents: diagonal Im[P], off-diagonal
    // Im of the top-right entry, i.e. Re[Q] sqrt(1-x^2) in the iQ sqrt(1-x^2)
    // convention (Q is real for symmetric protocols).
    const double ip0 = p0.eval(x).imag();
    const double ip1 = p1.eval(x).imag();
    const double iq0 = q0.coeffs.empty() ? 0.0 : q0.eval(x).real() * s;
    const double iq1 = q1.coeffs.empty() ? 0.0 : q1.eval(x).real() * s;
    const double e4 = 16.0 * std::pow(eps, 4);
    const double cx = e4 * iq0 * iq0 * iq1 * ip1;
    const double cz = e4 * ip0 * iq0 * ip1 * ip1;
    Unitary2 m = Unitary2::identity();
    m.a += Complex{0.0, cz};
    m.d += Complex{0.0, -cz};
    m.b += Complex{0.0, cx};
    m.c += Complex{0.0, cx};
    return m;
}

double nested_error_bound(double approx_err, double ident_dist, bool with_padding) {
    if (approx_err < 0 || ident_dist < 0) fail_precondition("bound arguments must be nonnegative");
    double leading = 32.0 * approx_err * ident_dist;
    if (!with_padding) return leading;
    return leading + 32.0 * approx_err * (ident_dist * ident_dist + approx_err);
}

}  // namespace qspskt

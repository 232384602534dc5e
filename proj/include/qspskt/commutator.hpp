#ifndef QSPSKT_COMMUTATOR_HPP
#define QSPSKT_COMMUTATOR_HPP

#include "qspskt/protocol.hpp"

namespace qspskt {

/**
 * The four conjugated copies entering the nested commutator. From symmetric
 * (XZ-planar) V0, V1:
 *
 *   U0 = Cx V0 Cx^dag         (XZ -> XY)
 *   U1 = Cz V1 Cz^dag         (XZ -> YZ)
 *   U2 = sigma_y U0 sigma_y   (= Cx^dag V0^dag Cx, the mirrored copy)
 *   U3 = sigma_y U1 sigma_y
 *
 * with Cx = exp(i pi/4 sigma_x), Cz = exp(i pi/4 sigma_z). The sigma_y
 * mirror equals the dagger exactly on XZ-planar values and is what makes the
 * nested commutator transpose-symmetric, hence exactly XZ-planar, at every
 * signal rather than only to leading order.
 */
struct PlanarQuadruple {
    Protocol u0, u1, u2, u3;
};

/// Builds the quadruple; rejects non-symmetric inputs with a deviation report.
PlanarQuadruple planar_quadruple(const Protocol& v0, const Protocol& v1);

/// [[U0,U1],[U2,U3]] as a single interleave word (16 constituent slots).
Protocol nested_commutator(const PlanarQuadruple& q);

/// Word-level group commutator of two protocols.
Protocol protocol_commutator(const Protocol& a, const Protocol& b);

/**
 * Leading-order value of the nested commutator at signal x from the
 * constituent polynomials, scaled by eps:
 *
 *   I + 16 i eps^4 [ q0^2 q1 p1 sigma_x + p0 q0 p1^2 sigma_z ]
 *
 * where p_k = Im[P_k](x) and q_k = Re[Q_k](x) sqrt(1-x^2) (the imaginary part
 * of the top-right entry) are the diagonal / off-diagonal components of the
 * eps-scaled V_k. Not unitary; exact at x = +-1 where the off-diagonal
 * factors vanish.
 */
Unitary2 leading_order_prediction(const ChebSeries& p0, const ChebSeries& q0,
                                  const ChebSeries& p1, const ChebSeries& q1, double x,
                                  double eps);

/// Leading bound 32*D*d plus second-order padding 32*D*(d^2 + D) by default.
double nested_error_bound(double approx_err, double ident_dist, bool with_padding = true);

}  // namespace qspskt

#endif

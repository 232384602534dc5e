#ifndef QSPSKT_IDENTITY_HPP
#define QSPSKT_IDENTITY_HPP

#include "qspskt/protocol.hpp"

namespace qspskt {

/**
 * The four-factor symmetric identity product
 *
 *   U(-Phi'^R, -x) U(Phi, x) U(Phi^R, x) U(-Phi', -x)
 *
 * with Phi = psi and Phi' = psi with its FIRST phase shifted by eps. At
 * eps = 0 the product is the identity for every signal; the word is
 * transpose-symmetric by construction, hence exactly XZ-planar. The
 * first-order term is
 *
 *   -2 i eps [ Re P_a(x) sigma_z + Re B_a(x) sigma_x ]
 *
 * where P_a, B_a are the top-left / top-right entries of the protocol with
 * the antisymmetric phase list Phi_a = {-psi_n, ..., -psi_1, 0, psi_1, ...,
 * psi_n} (see perturbation_first_order). Perturbing the LAST phase instead
 * telescopes to exactly exp(-2 i eps Z), which is also exposed as the
 * "shiftZ" conjugated variant.
 */
Protocol identity_perturbation(const Protocol& psi, double eps);

/// Protocol with the antisymmetric phase list driving the first-order term.
Protocol perturbation_core(const Protocol& psi);

/// The predicted d/d eps matrix at eps = 0 for identity_perturbation.
Unitary2 perturbation_first_order(const Protocol& psi, double x);

enum class PerturbVariant { Base, X, H, ShiftZ, ShiftX };

/**
 * Conjugated / shifted variants: X negates the first-order diagonal, H swaps
 * diagonal and off-diagonal, ShiftZ / ShiftX sandwich with exp(i eps Z/2) /
 * exp(i eps X/2) adding a constant to the respective component.
 */
Protocol conjugated_perturbation(const Protocol& psi, double eps, PerturbVariant variant);

/**
 * Symmetric translation residual x -> U(Phi,x)^dag A(x) U(Phi^R,x)^dag for a
 * sampled planar target A against the symmetric doubling U(Phi,x) U(Phi^R,x)
 * of `half`. The residual's distance to I equals the pre-shift error node by
 * node, and the residual stays XZ-planar when A is.
 */
struct ShiftResult {
    UnitarySample residual;
    double max_distance_to_identity = 0.0;
    double planarity_deviation = 0.0;
};
ShiftResult shift_to_identity(const UnitarySample& target, const Protocol& half);

/**
 * First-order probe composing the diagonal core (from psi_r), the H-swapped
 * off-diagonal core (from psi_s) and the two constant shifts, all at scale
 * eps. The measured d/d eps matrix approximates
 *
 *   i [ (-2 Re P_a^r(x) + r) sigma_z + (-2 Re P_a^s(x) + s) sigma_x ]
 *
 * plus the cores' sigma_x / sigma_z cross terms; probe_first_order returns
 * the exact prediction.
 */
Protocol independent_component_probe(const Protocol& psi_r, const Protocol& psi_s, double r,
                                     double s, double eps);
Unitary2 probe_first_order(const Protocol& psi_r, const Protocol& psi_s, double r, double s,
                           double x);

/**
 * Cyclically permuted difference of the symmetric doublings of two close
 * protocols: D(x) = [V'(x)^dag V(x)] [V(x)^T (V'(x)^T)^dag]. Reports the
 * per-axis first-order components; the y component stays at rounding level.
 */
struct DifferenceReport {
    double max_x = 0.0;
    double max_y = 0.0;
    double max_z = 0.0;
    double max_distance = 0.0;  // sup ||D - I||
};
DifferenceReport symmetric_difference_form(const Protocol& v, const Protocol& v_perturbed,
                                           const std::vector<double>& grid);

}  // namespace qspskt

#endif

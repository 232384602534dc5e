#ifndef QSPSKT_DENSITY_HPP
#define QSPSKT_DENSITY_HPP

#include "qspskt/protocol.hpp"
#include "qspskt/skt.hpp"

namespace qspskt {

/**
 * Up-and-back oracle walk with palindromic phase weights, conjugated by
 * exp(i pi/4 sigma_z): weight w_k drives the frequency-2k harmonic. Exactly
 * XZ-planar; evaluates to I at zero weights. The building block behind
 * small_phase_protocol and the driver's near-identity constituents.
 */
Protocol fourier_word(const std::vector<double>& weights,
                      const Oracle& oracle = Oracle::standard());

/**
 * Small-phase Fourier protocol. Coefficient c_k drives the frequency-2k
 * harmonic: the word walks the oracle power up to n and back down
 * (W ... W, W^-1 ... W^-1) with palindromic phase weights, conjugated by
 * exp(i pi/4 sigma_z) so the result is exactly XZ-planar and evaluates to I
 * at zero phases. To first order in the phases, with theta = arccos x,
 *
 *   Im<0|U|0>   = sum_k (c_k/alpha) cos(2k theta) + O(||Phi||_1^2),
 *   Im<0|U|1>   = sum_k (c_k/alpha) sin(2k theta) + O(||Phi||_1^2).
 *
 * Requires alpha >= C^2 / tolerance for the requested tolerance, where C is
 * the coefficient one-norm.
 */
Protocol small_phase_protocol(const std::vector<double>& coeffs, double alpha,
                              double tolerance = 1e-2, const Oracle& oracle = Oracle::standard());

/// Predicted first-order component on a theta value.
double small_phase_prediction(const std::vector<double>& coeffs, double alpha, double theta,
                              PiVariant component);

struct SmallPhaseDeviation {
    double component = 0.0;  // sup_theta |Im-component - prediction|
    double matrix = 0.0;     // sup_theta ||U - (I + i first-order)||
};
SmallPhaseDeviation small_phase_deviation(const Protocol& p, const std::vector<double>& coeffs,
                                          double alpha, int theta_nodes = 65);

/**
 * Single-ancilla LCU average isolating the top-right imaginary component as
 * a real scalar block: B(x) = -i [ (U(x) + U^R(x)) / 2 ] X, whose top-left
 * entry equals Im<0|U(x)|1>. Stores the block values over a theta grid.
 */
struct BlockFunction {
    std::vector<double> thetas;       // uniform theta grid
    std::vector<double> values;       // g(theta), real
    double max_abs = 0.0;
    double max_imag_leak = 0.0;       // |Im| of the realized block entry
};
BlockFunction lcu_combine(const Protocol& p, int theta_nodes = 65);

/// Demonstration 4x4 dilation of the same average (row-major 4x4 complex);
/// not used by the pipeline.
std::array<Complex, 16> lcu_dilation(const Unitary2& u, const Unitary2& v);

/// Pointwise T_a over the block values (a odd).
FunctionSample chebyshev_compose(const BlockFunction& b, int a);

/// Central-branch inverse of T_a (a odd): the monotone branch through 0.
double cheb_inverse_central(double value, int a);

/// ceil( log(2M / ((rho-1) eps)) / log rho ), clamped at 0. rho > 1 required.
int truncation_degree(double m_bound, double rho, double eps);

/// Protocol over a generalized oracle exp(i f(x) sigma_x) with the given
/// palindromic weights, same word shape as small_phase_protocol.
Protocol generalized_oracle_protocol(const Oracle& oracle, const std::vector<double>& weights,
                                     double alpha = 1.0);

/**
 * Projection of the measured diagonal component onto the modified cosine
 * basis cos(2k f(x)), with the f'(x) Jacobian weight; recovers small phase
 * weights of a generalized-oracle protocol.
 */
std::vector<double> modified_basis_projection(const Protocol& p, int k_max,
                                              int quadrature_nodes = 4001);

/**
 * Replaces every PHASE entry with the gate word of a Solovay-Kitaev
 * approximation of exp(i phi sigma_z) at depth `depth`. Returns the
 * discretized protocol plus a triangle-inequality deviation ledger (per-gate
 * errors and their sum, an upper bound on the sup deviation).
 */
struct DiscretizeResult {
    Protocol protocol;
    std::vector<double> per_phase_error;
    double ledger_bound = 0.0;
    double requested_eps_gate = 0.0;
    double achieved_eps_gate = 0.0;  // max per-phase error
};
DiscretizeResult discretize_phases(const Protocol& p, const Su2Net& net, double eps_gate,
                                   int depth = 0);

}  // namespace qspskt

#endif

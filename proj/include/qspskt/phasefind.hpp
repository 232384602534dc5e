#ifndef QSPSKT_PHASEFIND_HPP
#define QSPSKT_PHASEFIND_HPP

#include "qspskt/protocol.hpp"

namespace qspskt {

/// Component of the evaluated unitary a fit drives toward the target.
enum class FitComponent { ImTopLeft, ReTopLeft, ImTopRight };

double fit_component(const Unitary2& u, FitComponent c);

struct Objective {
    double value = 0.0;         // 0.5 * sum of squared residuals
    double sup_residual = 0.0;  // max |component - target| over the grid
};

/// Least-squares objective of a standard protocol against target samples.
Objective objective(const Protocol& p, const FunctionSample& target,
                    FitComponent component = FitComponent::ImTopLeft);

/// Analytic gradient of objective().value with respect to the phases
/// (chain rule through the interleave; each phase enters via i sigma_z).
std::vector<double> objective_gradient(const Protocol& p, const FunctionSample& target,
                                       FitComponent component = FitComponent::ImTopLeft);

/// Max relative deviation between the analytic gradient and central
/// differences with step h.
double gradient_check(const Protocol& p, const FunctionSample& target, double h,
                      FitComponent component = FitComponent::ImTopLeft);

struct FitOptions {
    bool symmetric = true;
    std::uint64_t seed = 0;
    int starts = 8;
    int max_iterations = 2000;
    double gradient_stop = 1e-12;
    double tolerance = 1e-6;          // requested sup residual
    FitComponent component = FitComponent::ImTopLeft;
    double subnormalization = 0.01;   // reject targets with sup > 1 - this
    bool check_parity = true;
};

struct FitResult {
    Protocol protocol;
    double residual = 0.0;   // sup-norm residual on the verification grid
    double objective = 0.0;
    int best_start = -1;
    bool converged = false;  // residual <= options.tolerance
};

/**
 * Quasi-Newton (BFGS with backtracking) fit of a degree-`degree` standard
 * protocol to a real Chebyshev target. Symmetric mode optimizes only the
 * independent half of a palindromic phase list, so every iterate is a
 * symmetric protocol by construction. Starts: zeros, the Fourier-limit
 * initialization, and small Gaussian perturbations. Deterministic for a
 * fixed seed. Throws a convergence error when no start reaches the
 * tolerance; the best protocol found is embedded in the message-carrying
 * exceptionless variant fit_phases_best.
 */
FitResult fit_phases(const ChebSeries& target, int degree, const FitOptions& options = {});

/// Same as fit_phases but returns the best-found result instead of throwing
/// on convergence failure.
FitResult fit_phases_best(const ChebSeries& target, int degree, const FitOptions& options = {});

}  // namespace qspskt

#endif

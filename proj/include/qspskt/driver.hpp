#ifndef QSPSKT_DRIVER_HPP
#define QSPSKT_DRIVER_HPP

#include "qspskt/cheb.hpp"
#include "qspskt/protocol.hpp"

namespace qspskt {

/// Exact level bookkeeping: eps_n = eps_{n-1}^{5/4}, ell_n = 17 ell_{n-1}.
struct Schedule {
    double eps0 = 0.1;
    long long ell0 = 1;
    std::vector<double> eps;     // per level, starting at eps0
    std::vector<long long> ell;  // per level, starting at ell0

    static Schedule make(double eps0, long long ell0, int levels);
};

struct LengthSchedule {
    int levels = 0;
    long long ell = 0;
    double exponent = 0.0;  // log(17)/log(5/4) ~ 12.7
};

/// n = ceil( log( log(c/eps) / log(c/eps0) ) / log(5/4) ), ell = 17^n ell0.
LengthSchedule length_schedule(double eps0, long long ell0, double eps, double c = 1.0);

/// One net entry: a protocol near the identity function together with its
/// sampled projection and the measured residual against its intended target.
struct NetEntry {
    Protocol protocol;
    FunctionSample projection;
    std::vector<double> intended;  // frequency-2k coefficients of the target
    double residual = 0.0;
};

struct FunctionNet {
    std::vector<NetEntry> entries;
    double eps = 0.0;          // net radius
    double ball_radius = 0.0;  // sup-norm bound of the covered ball
    double lipschitz = 0.0;
    int level = 0;
    std::vector<double> grid;
};

struct NetCheck {
    bool pass = false;
    double worst_sup = 0.0;        // max entry sup norm (<= ball + eps required)
    double worst_lipschitz = 0.0;  // max divided difference (<= 1.1 xi required)
    double worst_residual = 0.0;
};
NetCheck validate_net(const FunctionNet& net);

enum class InitialBuilder { PhaseFinder, FourierLcu };

struct InitialNetOptions {
    double eps0 = 0.1;
    InitialBuilder builder = InitialBuilder::PhaseFinder;
    int degree = -1;  // -1: smallest even degree covering the target
    std::uint64_t seed = 7;
    double lipschitz = 4.5;
    int grid_nodes = 33;
};

struct InitialNetResult {
    Protocol protocol;   // U0 U0^R-form approximation of the target
    Protocol half;       // U0 (protocol equals half * half^R pointwise)
    double residual = 0.0;
    FunctionNet net;     // level-0 net about the identity function
};

/// Initial density step: fits the U0 U0^R symmetric form to the target at
/// eps0 and seeds the level-0 net from the Fourier-word family on a
/// coefficient grid covering S_{eps0^{1/4}} at resolution eps0.
InitialNetResult initial_net(const ChebSeries& target, const InitialNetOptions& options = {});

struct RefineOptions {
    int sample_targets = 50;
    std::uint64_t seed = 11;
    double kappa = 0.45;           // base split: beta = gamma = kappa * eps^{1/4}
    double lipschitz_factor = 16.0;
    bool polish = true;
};

/**
 * One net-refinement step: for sampled targets h with sup |h| <= net.eps,
 * constructs nested-commutator pre-images seeded from the net entries
 * (leading-order inversion of the prediction formula plus a scalar polish)
 * and emits the eps^{5/4}-net with 17x length and 16x Lipschitz bookkeeping.
 */
FunctionNet refine_step(const FunctionNet& net, const RefineOptions& options = {});

/// The pre-image construction for one target, exposed for tests and the
/// synthesizer: returns an exactly planar protocol whose projection
/// approximates h (coefficients over frequencies 2k). The protocol equals
/// half * half^R pointwise, which lets the synthesizer keep a running
/// U0 U1 ... I ... U1^R U0^R chain across levels.
struct PreImage {
    Protocol protocol;
    Protocol half;
    double residual = 0.0;  // sup |Pi(N) - h| over the grid
};
PreImage nested_preimage(const std::vector<double>& h_coeffs, double eps_level, double kappa,
                         const std::vector<double>& grid, bool polish = true);

struct LevelLedger {
    int level = 0;
    double eps = 0.0;
    long long length = 0;
    double measured_residual = 0.0;
};

struct SynthesisConfig {
    double eps0 = 0.2;
    int degree0 = -1;            // -1: auto from the target degree (even)
    int max_levels = 2;
    int force_levels = -1;       // >= 0: run exactly this many refinements
    std::uint64_t seed = 3;
    InitialBuilder builder = InitialBuilder::PhaseFinder;
    double kappa = 0.45;
    int grid_nodes = 33;
};

struct SynthesisResult {
    Protocol protocol;
    double residual = 0.0;           // sup |Pi - target| on a 4x dense grid
    std::vector<LevelLedger> ledger;
    bool met_tolerance = false;
};

/**
 * End-to-end pipeline: initial net, then per level a symmetric translation
 * toward the identity followed by a nested-commutator pre-image for the
 * residual, unwrapped as U0 * N * U0^R. Even-parity targets only beyond
 * level 0 (the Fourier-word pre-image family is even); an odd target that
 * already meets eps at level 0 is returned unchanged.
 */
SynthesisResult synthesize(const ChebSeries& target, double eps,
                           const SynthesisConfig& config = {});

}  // namespace qspskt

#endif

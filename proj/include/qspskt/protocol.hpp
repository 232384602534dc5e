#ifndef QSPSKT_PROTOCOL_HPP
#define QSPSKT_PROTOCOL_HPP

#include <string>
#include <vector>

#include "qspskt/cheb.hpp"
#include "qspskt/su2.hpp"

namespace qspskt {

/**
 * The signal unitary W. The standard kind is exp(i arccos(x) sigma_x); the
 * generalized kind is exp(i f(x) sigma_x) for a smooth strictly monotone
 * f : [-1,1] -> [-pi, pi) with derivative bounded away from zero and
 * infinity (checked on a dense grid at construction).
 */
struct Oracle {
    enum class Kind { Standard, Generalized };
    Kind kind = Kind::Standard;

    // Generalized-only payload. Either a named analytic map or a sampled one
    // (linearly interpolated). Named maps keep the JSON round trip exact.
    std::string name;                 // "", "arccos", "linear"
    double slope = 0.0;               // for name == "linear": f(x) = slope * x
    std::vector<double> grid;         // for sampled maps
    std::vector<double> values;

    static Oracle standard() { return {}; }
    static Oracle generalized_named(const std::string& name, double slope = 0.0);
    static Oracle generalized_sampled(std::vector<double> grid, std::vector<double> values);

    double f(double x) const;           // the angle map
    Unitary2 evaluate(double x) const;  // exp(i f(x) sigma_x)
    bool same_as(const Oracle& o) const;

    /// Monotonicity / derivative-bound check on a dense grid.
    void validate() const;
};

enum class StepKind { Phase, Oracle, OracleInv, Fixed };

struct Step {
    StepKind kind = StepKind::Phase;
    int phase_index = -1;  // for Phase
    Unitary2 fixed;        // for Fixed
};

/**
 * A QSP protocol: an explicit interleave word over
 * {PHASE(j), ORACLE, ORACLE_INV, FIXED(U)} plus the phase list it references.
 * The standard convention (Def.-qsp ordering) is PHASE(0) then k repetitions
 * of [ORACLE, PHASE(j)].
 *
 * Protocols are immutable in practice: transformations return new values.
 */
struct Protocol {
    std::vector<double> phases;
    std::vector<Step> word;
    Oracle oracle;
    std::string convention = "standard";  // "standard" or "word"

    static Protocol standard(std::vector<double> phases, Oracle oracle = Oracle::standard());
    /// Protocol with empty word: evaluates to the identity everywhere.
    static Protocol identity();

    int phase_length() const;   // number of PHASE steps
    int oracle_length() const;  // number of ORACLE / ORACLE_INV steps
    std::size_t word_length() const { return word.size(); }
    int parity() const { return oracle_length() % 2; }

    bool is_standard_convention() const;
};

/// Product over the interleave at signal x. |x| <= 1 is required.
Unitary2 evaluate(const Protocol& p, double x);

/// Pointwise evaluation over a grid.
std::vector<Unitary2> evaluate_grid(const Protocol& p, const std::vector<double>& xs);

/// Word concatenation; evaluates to the pointwise product of evaluations.
Protocol concat(const Protocol& p, const Protocol& q);

enum class PiVariant { ImTopLeft, ImTopRight };

/// Im <0|U|0> (default) or the top-right imaginary component.
double project_pi(const Unitary2& u, PiVariant v = PiVariant::ImTopLeft);

struct PolynomialPair {
    ChebSeries p;  // top-left entry
    ChebSeries q;  // top-right divided by i sqrt(1-x^2)
    double residual = 0.0;
};

/// Interpolates P at k+1 Chebyshev nodes and Q at k interior nodes, then
/// re-checks both on a 4x denser grid; a residual above `tolerance` (default
/// 1e-9) signals non-polynomial entries and raises a precondition error.
PolynomialPair extract_polynomials(const Protocol& p, double tolerance = 1e-9);

enum class TransformOp { Reverse, Negate, SignalNegate };

/// Reverse reverses the word (the unitary transpose, U(Phi^R) for standard
/// protocols); Negate negates every phase; SignalNegate conjugates every
/// oracle by z and appends a -I bookkeeping gate for odd oracle count, so the
/// result evaluated at x equals the original at -x exactly.
Protocol transform(const Protocol& p, TransformOp op);

/// C * p * C^dag as FIXED entries.
Protocol conjugate(const Protocol& p, const Unitary2& c);

/// Word inverse: evaluates to evaluate(p, x)^dag.
Protocol inverse(const Protocol& p);

/// Word transpose: evaluates to evaluate(p, x)^T (same as Reverse).
Protocol transpose(const Protocol& p);

/// Entrywise conjugate word: evaluates to conj(evaluate(p, x)).
Protocol conjugate_entrywise(const Protocol& p);

/// Fixed conjugators for the plane maps (Rem.-planar_qsp_map style).
Unitary2 plane_gate_x();  // exp(i pi/4 sigma_x)
Unitary2 plane_gate_z();  // exp(i pi/4 sigma_z)

struct StructureReport {
    bool pass = false;
    double max_deviation = 0.0;
};

/// Symmetric: sup over grid of ||sigma_y U sigma_y - U^dag||.
StructureReport check_symmetric(const Protocol& p, const std::vector<double>& grid,
                                double threshold = 1e-9);

/// Planar with normal n: sup over grid of |axis . n| sin(theta), evaluated
/// via the anti-Hermitian part so theta ~ 0 needs no special casing.
StructureReport check_planar(const Protocol& p, const std::array<double, 3>& normal,
                             const std::vector<double>& grid, double threshold = 1e-9);

/// Default verification grid: 2k+1 Chebyshev nodes for a k-oracle protocol.
std::vector<double> default_grid(const Protocol& p);

}  // namespace qspskt

#endif

#ifndef QSPSKT_SKT_HPP
#define QSPSKT_SKT_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "qspskt/su2.hpp"

namespace qspskt {

/// A finite gate set, closed under inverses (checked at construction).
struct InstructionSet {
    std::vector<std::string> names;
    std::vector<Unitary2> gates;
    std::vector<int> inverse_of;  // index of each gate's inverse

    static InstructionSet make(std::vector<std::string> names, std::vector<Unitary2> gates);
    /// {H, T, T^dag} with SU(2) representatives.
    static InstructionSet h_t_tdag();

    int size() const { return static_cast<int>(gates.size()); }
};

/// A word over an instruction set with its cached product.
struct GateWord {
    std::vector<int> indices;
    Unitary2 product;

    std::size_t length() const { return indices.size(); }
    Unitary2 remultiply(const InstructionSet& s) const;
};

GateWord word_concat(const GateWord& a, const GateWord& b);
GateWord word_inverse(const GateWord& w, const InstructionSet& s);

/**
 * Epsilon-net over SU(2) built from all words up to a length cap, deduplicated
 * at resolution eps0/4. Lookup goes through a coarse bucket grid over the
 * canonicalized matrix entries (cell eps0/2) followed by a linear scan of the
 * neighboring cells. Distances are true operator-norm distances (the net
 * contains words near both SU(2) representatives of a rotation).
 */
struct Su2Net {
    InstructionSet instructions;
    std::vector<GateWord> entries;
    double eps0 = 0.0;
    double bucket_cell = 0.0;
    std::unordered_map<std::uint64_t, std::vector<int>> buckets;

    int nearest(const Unitary2& u) const;  // entry index
    double nearest_distance(const Unitary2& u) const;
    void insert(GateWord w);

    std::uint64_t bucket_key(const Unitary2& u) const;
};

struct CoverageReport {
    bool pass = false;
    double worst = 0.0;
    Unitary2 worst_sample;
};

/**
 * Enumerates words breadth-first up to max_len with dedup, then verifies
 * coverage on 1000 Haar samples at radius eps0. Coverage failure raises a
 * precondition error carrying the worst uncovered distance.
 */
Su2Net build_net(const InstructionSet& s, int max_len, double eps0, std::uint64_t seed = 12345,
                 CoverageReport* report = nullptr);

/**
 * Balanced-commutator decomposition: V, W equal-angle rotations about
 * conjugated axes with group_commutator(V, W) = U. The rotation angle solves
 * the exact commutator-angle equation by bisection; in the small-angle limit
 * the commutator angle is 2 phi^2.
 */
struct GcPair {
    Unitary2 v, w;
};
GcPair gc_decompose(const Unitary2& u);

/// Commutator angle of [rot(x, phi), rot(y, phi)]; monotone on [0, ~1.2].
double commutator_angle(double phi);

struct SkResult {
    GateWord word;
    double reported_error = 0.0;  // distance(product, target) tracked per level
    std::vector<double> level_errors;
    /// Per-level bound ledger: entry n >= 1 evaluates the commutator error
    /// bound at that level's measured (approximation error, identity
    /// distance) plus the previous level's error; entry 0 is the net radius.
    std::vector<double> bound_ledger;
    bool gc_fallback = false;     // residual left the gc_decompose domain
    std::size_t slot_count = 1;   // number of depth-0 net words composed (5^depth)
};

/// Dawson-Nielsen recursion. Depth 0 returns the nearest net entry.
SkResult solovay_kitaev(const Unitary2& u, int depth, const Su2Net& net);

/// Eq.-19 form: 8 D d + 4 D d^2 + 8 D^2 + 4 D^3 + D^4 for approximation
/// error D and distance-to-identity d.
double commutator_error_bound(double approx_err, double ident_dist);

}  // namespace qspskt

#endif

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "qspskt/json_io.hpp"
#include "qspskt/protocol.hpp"
#include "qspskt/skt.hpp"

using namespace qspskt;
using namespace qspskt_tests;

namespace {

const Su2Net& shared_net() {
    static const Su2Net net = build_net(InstructionSet::h_t_tdag(), 16, 0.3);
    return net;
}

}  // namespace

TEST_CASE("instruction set closure under inverses") {
    auto s = InstructionSet::h_t_tdag();
    CHECK(s.size() == 4);
    for (int i = 0; i < s.size(); ++i) {
        int j = s.inverse_of[static_cast<std::size_t>(i)];
        CHECK(distance(s.gates[static_cast<std::size_t>(i)].dagger(),
                       s.gates[static_cast<std::size_t>(j)]) <= 1e-12);
    }
    // A set missing an inverse is rejected.
    CHECK_THROWS_AS(InstructionSet::make({"T"}, {rotation({0, 0, 1}, -M_PI / 8)}), Error);
}

TEST_CASE("net build, dedup, coverage") {
    const auto& net = shared_net();
    CHECK(net.eps0 == 0.3);
    CHECK(net.entries.size() > 100);

    // T then Tdg collapses onto the identity entry: no entry other than the
    // empty word sits within dedup distance of I.
    int near_identity = 0;
    for (const auto& e : net.entries) {
        if (distance(e.product, Unitary2::identity()) <= net.eps0 / 4) ++near_identity;
    }
    CHECK(near_identity == 1);

    // Cached products match remultiplication.
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        const auto& e = net.entries[rng() % net.entries.size()];
        CHECK(distance(e.product, e.remultiply(net.instructions)) <= 1e-12);
    }

    // Coverage on fresh Haar samples.
    std::mt19937_64 rng2(1234);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        worst = std::max(worst, net.nearest_distance(haar_random(rng2)));
    }
    CHECK(worst <= net.eps0);

    // A non-universal set fails the coverage check.
    auto ident_set = InstructionSet::make({"I"}, {Unitary2::identity()});
    CHECK_THROWS_AS(build_net(ident_set, 4, 0.3), Error);
}

TEST_CASE("gc_decompose") {
    // Small z-rotation: theta = 2 phi^2 gives phi = 1e-2 for theta = 2e-4.
    GcPair vw = gc_decompose(rotation({0, 0, 1}, 2e-4));
    double phi_v = pauli_form(vw.v).theta;
    CHECK(std::abs(phi_v - 1e-2) <= 1e-6);

    // Identity maps to identity.
    GcPair id = gc_decompose(Unitary2::identity());
    CHECK(distance(id.v, Unitary2::identity()) < 1e-14);

    // Random targets at distance 0.05: exact reconstruction.
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        std::array<double, 3> axis = pauli_form(haar_random(rng)).axis;
        Unitary2 u = rotation(axis, 0.025);  // distance(I, U) = 2 sin(0.025) ~ 0.05
        GcPair p = gc_decompose(u);
        CHECK(distance(group_commutator(p.v, p.w), u) <= 1e-10);
        // Balanced: equal rotation angles for V and W.
        CHECK(std::abs(pauli_form(p.v).theta - pauli_form(p.w).theta) <= 1e-9);
    }

    CHECK_THROWS_AS(gc_decompose(rotation({0, 0, 1}, 1.0)), Error);
}

TEST_CASE("commutator error bound") {
    CHECK(commutator_error_bound(0.0, 0.3) == 0.0);
    double D = 1e-2, d = 1e-1;
    double expect = 8 * D * d + 4 * D * d * d + 8 * D * D + 4 * D * D * D + D * D * D * D;
    CHECK(commutator_error_bound(D, d) == doctest::Approx(expect).epsilon(1e-15));

    // Sampled quadruples satisfy the bound.
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    auto rand_axis = [&]() { return pauli_form(haar_random(rng)).axis; };
    for (int i = 0; i < 100; ++i) {
        Unitary2 v = rotation(rand_axis(), 0.04 * uni(rng));
        Unitary2 w = rotation(rand_axis(), 0.04 * uni(rng));
        Unitary2 vt = rotation(rand_axis(), 0.004 * uni(rng)) * v;
        Unitary2 wt = rotation(rand_axis(), 0.004 * uni(rng)) * w;
        double Dm = std::max(distance(v, vt), distance(w, wt));
        double dm = std::max(distance(Unitary2::identity(), v),
                             distance(Unitary2::identity(), w));
        double mismatch = distance(group_commutator(v, w), group_commutator(vt, wt));
        CHECK(mismatch <= commutator_error_bound(Dm, dm) + 1e-12);
    }
}

TEST_CASE("solovay_kitaev recursion") {
    const auto& net = shared_net();

    // Depth 0 on a net element: exact word, error ~ 0.
    const auto& probe = net.entries[net.entries.size() / 2];
    SkResult r0 = solovay_kitaev(probe.product, 0, net);
    CHECK(r0.reported_error <= 1e-12);
    CHECK(r0.slot_count == 1);

    // Two levels on Haar targets: slot bookkeeping 5^depth exactly, word
    // length bounded by 5^depth * longest net word, and the per-level error
    // ratio consistent with the 3/2-power law within 25%.
    std::size_t max_word = 0;
    for (const auto& e : net.entries) max_word = std::max(max_word, e.length());

    std::mt19937_64 rng(2024);
    std::vector<double> e0s, e1s, e2s;
    for (int i = 0; i < 20; ++i) {
        Unitary2 u = haar_random(rng);
        SkResult r = solovay_kitaev(u, 2, net);
        CHECK_FALSE(r.gc_fallback);
        CHECK(r.slot_count == 25);
        CHECK(r.word.length() <= 25 * max_word);
        CHECK(distance(r.word.product, u) == doctest::Approx(r.reported_error).epsilon(1e-12));
        CHECK(distance(r.word.remultiply(net.instructions), r.word.product) <= 1e-12);
        REQUIRE(r.level_errors.size() == 3);
        // Bound-recomputation oracle: each level's measured error stays
        // within the commutator error bound evaluated at that level's
        // measured approximation error and identity distance.
        REQUIRE(r.bound_ledger.size() == 3);
        CHECK(r.level_errors[0] <= r.bound_ledger[0] + 1e-12);
        for (std::size_t n = 1; n < 3; ++n) {
            CHECK(r.level_errors[n] <= r.bound_ledger[n] + 1e-12);
        }
        e0s.push_back(r.level_errors[0]);
        e1s.push_back(r.level_errors[1]);
        e2s.push_back(r.level_errors[2]);
    }
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return v[v.size() / 2];
    };
    double m0 = median(e0s), m1 = median(e1s), m2 = median(e2s);
    CHECK(m1 < m0);
    CHECK(m2 < m1);
    // Fitted exponent p with eps_n = C eps_{n-1}^p at stable C:
    double p_hat = std::log(m2 / m1) / std::log(m1 / m0);
    CHECK(p_hat >= 1.5 * 0.75);
    CHECK(p_hat <= 1.5 * 1.25);
}

TEST_CASE("balanced-commutator / QSP correspondence") {
    // The commutator word [e^{i phi X}, e^{i phi Y}] equals the five-phase
    // protocol at x = cos(phi), exactly.
    const std::vector<double> phases{0.0, -M_PI / 4, 3 * M_PI / 4, -M_PI / 4, -M_PI / 4};
    Protocol proto = Protocol::standard(phases);
    for (double phi : {0.3, 0.1, 0.02}) {
        Unitary2 k = group_commutator(rotation({1, 0, 0}, phi), rotation({0, 1, 0}, phi));
        CHECK(distance(evaluate(proto, std::cos(phi)), k) <= 1e-12);
    }
    // Known polynomials to 1e-10.
    auto pq = extract_polynomials(proto);
    for (double x : cheb_nodes(21)) {
        double re = -1 + 4 * x * x - 2 * std::pow(x, 4);
        double im = -2 * x * x * (1 - x * x);
        CHECK(std::abs(pq.p.eval(x) - Complex{re, im}) <= 1e-10);
    }
    // Small-angle limit matches diag(1 - 2i phi^2, 1 + 2i phi^2) to O(phi^3).
    for (double phi : {1e-2, 1e-3}) {
        Unitary2 lim = Unitary2::raw({1, -2 * phi * phi}, {0, 0}, {0, 0}, {1, 2 * phi * phi});
        CHECK(distance(evaluate(proto, std::cos(phi)), lim) <= 10 * phi * phi * phi);
    }
}

TEST_CASE("net JSON round trip with version tag") {
    Su2Net small = build_net(InstructionSet::h_t_tdag(), 8, 0.7);
    std::string text = su2net_to_json(small);
    Su2Net back = su2net_from_json(text);
    REQUIRE(back.entries.size() == small.entries.size());
    CHECK(back.eps0 == small.eps0);
    for (std::size_t i = 0; i < small.entries.size(); ++i) {
        CHECK(distance(back.entries[i].product, small.entries[i].product) <= 1e-12);
    }
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
        Unitary2 u = haar_random(rng);
        CHECK(back.nearest_distance(u) == doctest::Approx(small.nearest_distance(u)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(su2net_from_json("{\"format\":\"qspskt-su2net\",\"version\":99}"), Error);
}

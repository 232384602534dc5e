#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "qspskt/density.hpp"
#include "qspskt/driver.hpp"
#include "qspskt/json_io.hpp"
#include "qspskt/protocol.hpp"

using namespace qspskt;
using namespace qspskt_tests;

namespace {

ChebSeries series(std::initializer_list<double> coeffs) {
    ChebSeries s;
    for (double c : coeffs) s.coeffs.push_back({c, 0.0});
    return s;
}

}  // namespace

TEST_CASE("schedule invariants are exact") {
    Schedule s = Schedule::make(0.1, 3, 4);
    REQUIRE(s.eps.size() == 5);
    for (int n = 1; n <= 4; ++n) {
        CHECK(s.eps[static_cast<std::size_t>(n)] ==
              std::pow(s.eps[static_cast<std::size_t>(n - 1)], 1.25));
        CHECK(s.ell[static_cast<std::size_t>(n)] == 17 * s.ell[static_cast<std::size_t>(n - 1)]);
    }
    CHECK(s.ell[4] == 3LL * 17 * 17 * 17 * 17);
}

TEST_CASE("length_schedule formula") {
    // eps = eps0: zero levels.
    auto ls0 = length_schedule(0.1, 5, 0.1);
    CHECK(ls0.levels == 0);
    CHECK(ls0.ell == 5);

    // eps0 = 0.1, c = 1, eps = 1e-3: ceil(log(3)/log(1.25)) = 5 levels, 17^5 ell0.
    auto ls = length_schedule(0.1, 2, 1e-3, 1.0);
    CHECK(ls.levels == 5);
    CHECK(ls.ell == 2LL * 17 * 17 * 17 * 17 * 17);

    // Exponent report log(17)/log(5/4) = 12.70 +- 0.01.
    CHECK(std::abs(ls.exponent - 12.7) <= 0.01);

    CHECK_THROWS_AS(length_schedule(1.2, 1, 0.1), Error);
}

TEST_CASE("initial net") {
    InitialNetOptions opt;
    opt.eps0 = 0.1;

    // Zero target: identity protocol, zero residual.
    auto zero = initial_net(series({0.0}), opt);
    CHECK(zero.residual == 0.0);
    CHECK(zero.protocol.word_length() == 0);

    // 0.5 T2 at eps0 = 0.1: residual well within eps0 (exactly fittable).
    auto r = initial_net(series({0.0, 0.0, 0.5}), opt);
    CHECK(r.residual <= 0.1);
    // The protocol equals half * half^R pointwise.
    Protocol doubled = concat(r.half, transpose(r.half));
    for (double x : cheb_nodes(17)) {
        CHECK(distance(evaluate(doubled, x), evaluate(r.protocol, x)) <= 1e-10);
    }

    // Net invariants: sup norm within ball + eps, Lipschitz within 1.1 xi.
    auto chk = validate_net(r.net);
    CHECK(chk.pass);
    CHECK(chk.worst_sup <= r.net.ball_radius + r.net.eps);

    // Coverage oracle: 50 random functions in the ball (degree <= 2 slice,
    // clipped sup norm) each within eps0 of some entry in sup distance.
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        double a = uni(rng) * r.net.ball_radius, b = uni(rng) * r.net.ball_radius;
        if (std::abs(a) + std::abs(b) > r.net.ball_radius) {
            double scale = r.net.ball_radius / (std::abs(a) + std::abs(b));
            a *= scale;
            b *= scale;
        }
        double best = 1e300;
        for (const auto& e : r.net.entries) {
            double worst = 0.0;
            for (std::size_t i = 0; i < e.projection.grid.size(); ++i) {
                double x = e.projection.grid[i];
                worst = std::max(worst,
                                 std::abs(e.projection.values[i] - (a + b * chebyshev_T(2, x))));
            }
            best = std::min(best, worst);
        }
        CHECK(best <= opt.eps0);
    }
}

TEST_CASE("nested preimage") {
    auto grid = cheb_nodes(33);
    // Identity target maps to the identity protocol.
    PreImage id = nested_preimage({0.0, 0.0}, 0.1, 0.45, grid);
    CHECK(id.protocol.word_length() == 0);
    CHECK(id.residual == 0.0);

    // A generic target: planar output, half-split exact, residual within the
    // refinement law.
    PreImage pre = nested_preimage({0.02, -0.05}, 0.1, 0.45, grid);
    CHECK(pre.residual <= std::pow(0.1, 1.25) * 1.5);
    CHECK(check_planar(pre.protocol, {0, 1, 0}, grid, 1e-9).max_deviation <= 1e-10);
    Protocol recon = concat(pre.half, transpose(pre.half));
    for (double x : cheb_nodes(9)) {
        CHECK(distance(evaluate(recon, x), evaluate(pre.protocol, x)) <= 1e-12);
    }
}

TEST_CASE("refine_step") {
    InitialNetOptions opt;
    opt.eps0 = 0.1;
    auto init = initial_net(series({0.0, 0.0, 0.5}), opt);

    RefineOptions ropt;
    ropt.sample_targets = 50;
    FunctionNet next = refine_step(init.net, ropt);

    // Exact schedule bookkeeping.
    CHECK(next.eps == doctest::Approx(std::pow(0.1, 1.25)).epsilon(1e-14));
    CHECK(next.lipschitz == doctest::Approx(16.0 * init.net.lipschitz).epsilon(1e-14));
    CHECK(next.level == init.net.level + 1);

    // Identity target survives refinement as the identity protocol.
    bool has_identity = false;
    for (const auto& e : next.entries) {
        if (e.intended[0] == 0.0 && e.intended[1] == 0.0) {
            has_identity = true;
            CHECK(e.protocol.word_length() == 0);
            CHECK(e.residual == 0.0);
        }
    }
    CHECK(has_identity);

    // Residual law and planarity for every refined entry; length bookkeeping
    // against the input net's longest word.
    std::size_t max_len = 0;
    for (const auto& e : init.net.entries) max_len = std::max(max_len, e.protocol.word_length());
    double worst = 0.0;
    for (const auto& e : next.entries) {
        worst = std::max(worst, e.residual);
        CHECK(e.protocol.word_length() <= 17 * max_len);
        if (e.protocol.word_length() > 0) {
            CHECK(check_planar(e.protocol, {0, 1, 0}, next.grid, 1e-9).pass);
        }
    }
    CHECK(worst <= std::pow(0.1, 1.25) * 1.5);
}

TEST_CASE("synthesize") {
    SynthesisConfig cfg;
    cfg.eps0 = 0.2;

    SUBCASE("level-0-achievable target returns unchanged") {
        auto r = synthesize(series({0.0, 0.0, 0.5, 0.0, 0.3}), 0.01, cfg);
        CHECK(r.met_tolerance);
        CHECK(r.ledger.size() == 1);
        CHECK(r.ledger[0].level == 0);
        CHECK(r.residual <= 0.01);
    }

    SUBCASE("one forced refinement level meets the end-to-end bound") {
        SynthesisConfig forced = cfg;
        forced.force_levels = 1;
        auto r = synthesize(series({0.0, 0.0, 0.5, 0.0, 0.3}), 1e-3, forced);
        REQUIRE(r.ledger.size() == 2);
        // Ledger shows eps1 = eps0^{5/4} exactly.
        CHECK(r.ledger[1].eps == doctest::Approx(std::pow(0.2, 1.25)).epsilon(1e-14));
        // Verified residual strictly below eps0 and within the level-1 law.
        CHECK(r.residual <= std::pow(0.2, 1.25) * 1.5);
        CHECK(r.residual < 0.2);
    }

    SUBCASE("degree-capped initial plus refinement stays within the law") {
        SynthesisConfig capped = cfg;
        capped.degree0 = 2;
        capped.force_levels = 1;
        auto r = synthesize(series({0.0, 0.0, 0.5, 0.0, 0.15}), 1e-3, capped);
        REQUIRE(r.ledger.size() == 2);
        CHECK(r.ledger[0].measured_residual <= 0.2);     // initial net contract
        CHECK(r.residual <= std::pow(0.2, 1.25) * 1.5);  // end-to-end law
        CHECK(r.residual <= r.ledger[0].measured_residual + 1e-12);  // keep-best
    }

    SUBCASE("returned protocol is unitary and consistent on a fresh grid") {
        SynthesisConfig forced = cfg;
        forced.force_levels = 1;
        ChebSeries t = series({0.0, 0.0, 0.5});
        auto r = synthesize(t, 1e-4, forced);
        double worst = 0.0;
        for (double x : cheb_nodes(49)) {
            Unitary2 u = evaluate(r.protocol, x);
            CHECK(u.unitarity_defect() <= 1e-11);
            worst = std::max(worst, std::abs(project_pi(u) - t.eval_real(x)));
        }
        // Fresh-grid residual agrees with the reported one.
        CHECK(worst <= r.residual + 1e-3);
    }

    SUBCASE("odd targets refuse refinement") {
        SynthesisConfig forced = cfg;
        forced.force_levels = 1;
        CHECK_THROWS_AS(synthesize(series({0.0, 0.5}), 1e-9, forced), Error);
    }
}

TEST_CASE("function net JSON round trip with level metadata") {
    InitialNetOptions opt;
    opt.eps0 = 0.25;  // small, fast net for the serialization check
    ChebSeries zero;
    zero.coeffs = {{0.0, 0.0}};
    auto init = initial_net(zero, opt);
    std::string text = function_net_to_json(init.net);
    FunctionNet back = function_net_from_json(text);
    CHECK(back.level == init.net.level);
    CHECK(back.eps == init.net.eps);
    CHECK(back.ball_radius == init.net.ball_radius);
    REQUIRE(back.entries.size() == init.net.entries.size());
    for (std::size_t i = 0; i < back.entries.size(); i += 17) {
        const auto& a = back.entries[i];
        const auto& b = init.net.entries[i];
        CHECK(a.residual == b.residual);
        for (double x : {-0.4, 0.6}) {
            CHECK(distance(evaluate(a.protocol, x), evaluate(b.protocol, x)) <= 1e-14);
        }
    }
    CHECK_THROWS_AS(function_net_from_json("{}"), Error);
}

TEST_CASE("compatible-commutator contract: projection closeness controls "
          "operator closeness on the net family") {
    // Within the Fourier-word family the projection coefficients determine
    // the whole near-identity protocol, so sup |Pi(U) - Pi(V)| bounds
    // sup ||U - V|| with a modest constant. The constant is fitted here and
    // pinned; a replacement commutator family must re-certify it.
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> uni(-0.2, 0.2);
    auto grid = cheb_nodes(33);
    double worst_ratio = 0.0;
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<double> w1{uni(rng), uni(rng)}, w2{uni(rng), uni(rng)};
        Protocol u = fourier_word(w1);
        Protocol v = fourier_word(w2);
        double pi_dist = 0.0, op_dist = 0.0;
        for (double x : grid) {
            Unitary2 a = evaluate(u, x), b = evaluate(v, x);
            pi_dist = std::max(pi_dist, std::abs(project_pi(a) - project_pi(b)));
            op_dist = std::max(op_dist, distance(a, b));
        }
        if (pi_dist > 1e-6) worst_ratio = std::max(worst_ratio, op_dist / pi_dist);
    }
    CHECK(worst_ratio <= 5.0);
    CHECK(worst_ratio >= 1.0);  // the projection is one component of the matrix
}

#include <doctest.h>

#include "qspskt/words.hpp"

using namespace qspskt;

TEST_CASE("balanced counts") {
    CHECK(balanced_count(0) == 1);
    CHECK(balanced_count(2) == 6);
    CHECK(balanced_count(10) == 184756);
    // Big-integer regime: C(80, 40) has 24 digits.
    CHECK(balanced_count(40) == BigInt("107507208733336176461620"));
    CHECK_THROWS_AS(balanced_count(-1), Error);
}

TEST_CASE("constrained counts match brute force exhaustively") {
    // Exhaustive equality for r <= 10, eta <= 6 -- the series coefficients
    // against direct enumeration of balanced strings.
    for (int r = 0; r <= 10; ++r) {
        for (int eta = 1; eta <= 6; ++eta) {
            CHECK(constrained_count(r, eta) == constrained_count_brute(r, eta));
        }
    }
    // Known small values.
    CHECK(constrained_count(2, 2) == 3);
    CHECK(constrained_count(3, 2) == 4);
    // eta beyond the string length: constraint vacuous.
    CHECK(constrained_count(4, 9) == balanced_count(4));
    CHECK(constrained_count(3, 7) == balanced_count(3));
}

TEST_CASE("constrained count monotonicity") {
    for (int r = 1; r <= 8; ++r) {
        BigInt prev = 0;
        for (int eta = 1; eta <= 2 * r + 1; ++eta) {
            BigInt cur = constrained_count(r, eta);
            CHECK(cur >= prev);
            CHECK(cur <= balanced_count(r));
            prev = cur;
        }
        CHECK(prev == balanced_count(r));
    }
    // eta = 1 forbids any zero run: only possible when r = 0.
    CHECK(constrained_count(3, 1) == 0);
    CHECK(constrained_count(0, 1) == 1);
}

TEST_CASE("expected word length estimate") {
    // Doubling 1/eps approximately doubles the leading term.
    auto a = expected_word_length(2.0, 1e-3, 3);
    auto b = expected_word_length(2.0, 5e-4, 3);
    double ratio = b.leading / a.leading;
    CHECK(ratio >= 1.8);
    CHECK(ratio <= 2.2);
    CHECK(b.n > a.n);

    // xi -> 0: the leading term vanishes and polylog terms dominate but the
    // estimate stays positive.
    auto c = expected_word_length(1e-9, 1e-2, 3);
    CHECK(c.leading <= 1e-6);
    CHECK(c.n > 0.0);
    CHECK(c.polylog > c.leading);

    // Larger alphabets decrease n monotonically.
    double prev = 1e300;
    for (int alphabet : {2, 3, 5, 8, 16}) {
        double n = expected_word_length(1.5, 1e-3, alphabet).n;
        CHECK(n < prev);
        prev = n;
    }

    CHECK_THROWS_AS(expected_word_length(0.0, 1e-3, 3), Error);
    CHECK_THROWS_AS(expected_word_length(1.0, 2.0, 3), Error);
}

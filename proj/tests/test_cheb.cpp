#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "qspskt/cheb.hpp"

using namespace qspskt;
using namespace qspskt_tests;

TEST_CASE("fit reproduces basis functions") {
    // f = T5: c5 = 1, everything else at rounding level.
    auto xs = cheb_nodes(12);
    std::vector<double> vals;
    for (double x : xs) vals.push_back(chebyshev_T(5, x));
    ChebSeries s = cheb_fit_real(vals);
    for (int k = 0; k <= s.degree(); ++k) {
        double expect = (k == 5) ? 1.0 : 0.0;
        CHECK(std::abs(s.coeffs[static_cast<std::size_t>(k)] - expect) <= 1e-12);
    }
}

TEST_CASE("evaluation at nodes reproduces samples") {
    // Degree <= 64 round trip at 1e-10.
    auto xs = cheb_nodes(65);
    std::vector<double> vals;
    for (double x : xs) vals.push_back(std::sin(3.0 * x) + chebyshev_T(40, x) * 0.25);
    ChebSeries s = cheb_fit_real(vals);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        CHECK(std::abs(s.eval_real(xs[i]) - vals[i]) <= 1e-10);
    }
}

TEST_CASE("geometric coefficient decay for analytic functions") {
    // f = exp(x)/e: |c_k| decays geometrically; fit the decay ratio.
    auto xs = cheb_nodes(40);
    std::vector<double> vals;
    for (double x : xs) vals.push_back(std::exp(x) / std::exp(1.0));
    ChebSeries s = cheb_fit_real(vals);
    // Ratios |c_{k+1}| / |c_k| must be uniformly below 1 and shrinking.
    for (int k = 2; k <= 10; ++k) {
        double r = std::abs(s.coeffs[static_cast<std::size_t>(k + 1)]) /
                   std::abs(s.coeffs[static_cast<std::size_t>(k)]);
        CHECK(r < 0.5);
    }
}

TEST_CASE("parity of coefficients") {
    auto xs = cheb_nodes(24);
    std::vector<double> vals;
    for (double x : xs) vals.push_back(x * x * (2.0 - x * x));  // even
    ChebSeries s = cheb_fit_real(vals);
    CHECK(s.parity_defect(0) <= 1e-12);  // odd coefficients vanish
}

TEST_CASE("chebyshev_fit on an arbitrary sample grid") {
    FunctionSample f;
    f.grid = uniform_grid(801);
    for (double x : f.grid) f.values.push_back(0.3 * chebyshev_T(2, x) + 0.1 * chebyshev_T(4, x));
    auto rep = chebyshev_fit(f, 8);
    CHECK(rep.residual <= 1e-5);  // linear resampling error on 801 nodes
    CHECK(std::abs(rep.series.coeffs[2] - 0.3) <= 1e-5);
    CHECK(std::abs(rep.series.coeffs[4] - 0.1) <= 1e-5);
}

TEST_CASE("sample validation") {
    FunctionSample s;
    s.grid = {0.0, 0.0};
    s.values = {1.0, 2.0};
    CHECK_THROWS_AS(s.validate(), Error);
    s.grid = {0.0, 1.0};
    s.values = {1.0};
    CHECK_THROWS_AS(s.validate(), Error);
}

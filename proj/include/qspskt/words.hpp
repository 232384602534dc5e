#ifndef QSPSKT_WORDS_HPP
#define QSPSKT_WORDS_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "qspskt/common.hpp"

namespace qspskt {

using BigInt = boost::multiprecision::cpp_int;

/// Central binomial coefficient C(2r, r), exact.
BigInt balanced_count(int r);

/**
 * Number of balanced binary strings of length 2r containing no run of eta or
 * more consecutive zeros: the coefficient of u^r v^r t^{2r} in
 * G(t,u,v,eta) = [ (tu-1)/(t^eta u^eta - 1) - tv ]^{-1}, computed by
 * truncated power-series arithmetic with exact integer coefficients.
 */
BigInt constrained_count(int r, int eta);

/// Brute-force reference over all balanced strings (test oracle; r <= ~12).
BigInt constrained_count_brute(int r, int eta);

struct WordLengthEstimate {
    double n = 0.0;             // estimated word length
    double leading = 0.0;       // (c1 xi / eps) / log(alphabet)
    double polylog = 0.0;       // remainder
};

/**
 * Expected word length from the covering relation
 * c0 xi eps |A|^n > exp(c1 xi / eps) / eps^2, solved for n.
 */
WordLengthEstimate expected_word_length(double xi, double eps, int alphabet, double c0 = 1.0,
                                        double c1 = 1.0);

}  // namespace qspskt

#endif

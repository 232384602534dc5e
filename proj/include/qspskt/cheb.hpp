#ifndef QSPSKT_CHEB_HPP
#define QSPSKT_CHEB_HPP

#include <vector>

#include "qspskt/common.hpp"
#include "qspskt/su2.hpp"

namespace qspskt {

/// Coefficients in the Chebyshev-T basis on [-1,1] (equivalently a
/// trigonometric polynomial in theta = arccos x).
struct ChebSeries {
    std::vector<Complex> coeffs;  // c_0 .. c_n
    std::string basis = "chebyshev-T";

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    Complex eval(double x) const;
    double eval_real(double x) const { return eval(x).real(); }

    /// Max |c_k| over odd (parity=1) or even (parity=0) k of the WRONG parity;
    /// small for definite-parity series.
    double parity_defect(int parity) const;
    double one_norm() const;
    double sup_norm(int nodes = 201) const;
};

/// Sampled real function on a strictly increasing grid.
struct FunctionSample {
    std::vector<double> grid;
    std::vector<double> values;

    void validate() const;
};

/// Sampled SU(2)-valued function (used by the identity-shift machinery).
struct UnitarySample {
    std::vector<double> grid;
    std::vector<Unitary2> values;
};

/// Chebyshev-Gauss nodes cos(pi (j + 1/2)/n), j = 0..n-1, ascending.
std::vector<double> cheb_nodes(int n);

/// Degree-(n-1) interpolant through values sampled at cheb_nodes(n),
/// via the discrete cosine projection (exact for lower-degree inputs).
ChebSeries cheb_fit(const std::vector<Complex>& values_at_nodes);

/// Convenience: fit real samples taken at cheb_nodes(n).
ChebSeries cheb_fit_real(const std::vector<double>& values_at_nodes);

/// Projection of an arbitrary sample set onto the first n+1 Chebyshev
/// polynomials (resamples the function at Chebyshev nodes by linear
/// interpolation of the given samples; exact when the sample grid already is
/// cheb_nodes). Returns the series plus the re-evaluation residual.
struct ChebFitReport {
    ChebSeries series;
    double residual = 0.0;
};
ChebFitReport chebyshev_fit(const FunctionSample& samples, int n);

}  // namespace qspskt

#endif

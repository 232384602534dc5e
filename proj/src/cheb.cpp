#include "qspskt/cheb.hpp"

#include <algorithm>
#include <cmath>

namespace qspskt {

Complex ChebSeries::eval(double x) const {
    if (coeffs.empty()) return {0.0, 0.0};
    // Clenshaw recurrence.
    Complex b1{0.0, 0.0}, b2{0.0, 0.0};
    for (std::size_t k = coeffs.size(); k-- > 1;) {
        Complex tmp = b1;
        b1 = coeffs[k] + 2.0 * x * b1 - b2;
        b2 = tmp;
    }
    return coeffs[0] + x * b1 - b2;
}

double ChebSeries::parity_defect(int parity) const {
    double worst = 0.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (static_cast<int>(k % 2) != parity) worst = std::max(worst, std::abs(coeffs[k]));
    }
    return worst;
}

double ChebSeries::one_norm() const {
    double s = 0.0;
    for (const auto& ck : coeffs) s += std::abs(ck);
    return s;
}

double ChebSeries::sup_norm(int nodes) const {
    double worst = 0.0;
    for (int j = 0; j < nodes; ++j) {
        double x = (nodes == 1) ? 0.0 : -1.0 + 2.0 * j / (nodes - 1);
        worst = std::max(worst, std::abs(eval(x)));
    }
    return worst;
}

void FunctionSample::validate() const {
    if (grid.size() != values.size()) fail_precondition("sample grid/value size mismatch");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (!(grid[i] < grid[i + 1])) fail_precondition("sample grid must be strictly increasing");
    }
    for (double v : values) {
        if (!std::isfinite(v)) fail_precondition("sample values must be finite");
    }
}

std::vector<double> cheb_nodes(int n) {
    std::vector<double> xs(n);
    for (int j = 0; j < n; ++j) {
        xs[j] = std::cos(M_PI * (j + 0.5) / n);
    }
    std::reverse(xs.begin(), xs.end());  // ascending
    return xs;
}

ChebSeries cheb_fit(const std::vector<Complex>& values_at_nodes) {
    const int n = static_cast<int>(values_at_nodes.size());
    ChebSeries s;
    s.coeffs.assign(n, Complex{0.0, 0.0});
    // Nodes here are ascending, i.e. node j corresponds to angle pi(n-1-j+1/2)/n.
    for (int k = 0; k < n; ++k) {
        Complex acc{0.0, 0.0};
        for (int j = 0; j < n; ++j) {
            double ang = M_PI * (n - 1 - j + 0.5) / n;
            acc += values_at_nodes[j] * std::cos(k * ang);
        }
        s.coeffs[k] = acc * ((k == 0 ? 1.0 : 2.0) / n);
    }
    return s;
}

ChebSeries cheb_fit_real(const std::vector<double>& values_at_nodes) {
    std::vector<Complex> v(values_at_nodes.begin(), values_at_nodes.end());
    return cheb_fit(v);
}

namespace {

double lerp_sample(const FunctionSample& s, double x) {
    const auto& g = s.grid;
    if (x <= g.front()) return s.values.front();
    if (x >= g.back()) return s.values.back();
    auto it = std::upper_bound(g.begin(), g.end(), x);
    std::size_t i = static_cast<std::size_t>(it - g.begin());
    double t = (x - g[i - 1]) / (g[i] - g[i - 1]);
    return (1.0 - t) * s.values[i - 1] + t * s.values[i];
}

}  // namespace

ChebFitReport chebyshev_fit(const FunctionSample& samples, int n) {
    samples.validate();
    if (static_cast<std::size_t>(n) + 1 > samples.grid.size()) {
        fail_precondition("chebyshev_fit: need at least n+1 sample nodes");
    }
    auto xs = cheb_nodes(n + 1);
    std::vector<double> vals(xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j) vals[j] = lerp_sample(samples, xs[j]);
    ChebFitReport rep;
    rep.series = cheb_fit_real(vals);
    for (std::size_t i = 0; i < samples.grid.size(); ++i) {
        rep.residual = std::max(
            rep.residual, std::abs(rep.series.eval_real(samples.grid[i]) - samples.values[i]));
    }
    return rep;
}

}  // namespace qspskt

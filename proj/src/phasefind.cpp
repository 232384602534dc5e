#include "qspskt/phasefind.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace qspskt {

double fit_component(const Unitary2& u, FitComponent c) {
    switch (c) {
        case FitComponent::ImTopLeft: return u.a.imag();
        case FitComponent::ReTopLeft: return u.a.real();
        case FitComponent::ImTopRight: return u.b.imag();
    }
    return 0.0;
}

namespace {

Unitary2 phase_gate(double phi) {
    return Unitary2::raw({std::cos(phi), std::sin(phi)}, {0, 0}, {0, 0},
                         {std::cos(phi), -std::sin(phi)});
}

/// Residuals and the per-phase Jacobian at one signal node.
void node_residual_grad(const Protocol& p, double x, FitComponent comp, double target,
                        double& res, std::vector<double>* grad) {
    const std::size_t m = p.word.size();
    std::vector<Unitary2> prefix(m + 1);
    prefix[0] = Unitary2::identity();
    Unitary2 w = p.oracle.evaluate(x);
    auto step_matrix = [&](const Step& s) -> Unitary2 {
        switch (s.kind) {
            case StepKind::Phase:
                return phase_gate(p.phases.at(static_cast<std::size_t>(s.phase_index)));
            case StepKind::Oracle:
                return w;
            case StepKind::OracleInv:
                return w.dagger();
            case StepKind::Fixed:
                return s.fixed;
        }
        return Unitary2::identity();
    };
    for (std::size_t t = 0; t < m; ++t) prefix[t + 1] = prefix[t] * step_matrix(p.word[t]);
    const Unitary2 u = prefix[m];
    res = fit_component(u, comp) - target;
    if (!grad) return;
    // Suffix products, consumed backwards.
    std::vector<Unitary2> suffix(m + 1);
    suffix[m] = Unitary2::identity();
    for (std::size_t t = m; t-- > 0;) suffix[t] = step_matrix(p.word[t]) * suffix[t + 1];
    const Unitary2 iz = Unitary2::raw({0, 1}, {0, 0}, {0, 0}, {0, -1});
    for (std::size_t t = 0; t < m; ++t) {
        const Step& s = p.word[t];
        if (s.kind != StepKind::Phase) continue;
        Unitary2 du = prefix[t] * iz * suffix[t];  // iz commutes with the phase gate
        (*grad)[static_cast<std::size_t>(s.phase_index)] += res * fit_component(du, comp);
    }
}

}  // namespace

Objective objective(const Protocol& p, const FunctionSample& target, FitComponent component) {
    target.validate();
    Objective o;
    for (std::size_t i = 0; i < target.grid.size(); ++i) {
        double res;
        node_residual_grad(p, target.grid[i], component, target.values[i], res, nullptr);
        o.value += 0.5 * res * res;
        o.sup_residual = std::max(o.sup_residual, std::abs(res));
    }
    return o;
}

std::vector<double> objective_gradient(const Protocol& p, const FunctionSample& target,
                                       FitComponent component) {
    std::vector<double> grad(p.phases.size(), 0.0);
    for (std::size_t i = 0; i < target.grid.size(); ++i) {
        double res;
        node_residual_grad(p, target.grid[i], component, target.values[i], res, &grad);
    }
    return grad;
}

double gradient_check(const Protocol& p, const FunctionSample& target, double h,
                      FitComponent component) {
    if (h < 1e-8 || h > 1e-3) fail_precondition("gradient_check: h must lie in [1e-8, 1e-3]");
    auto grad = objective_gradient(p, target, component);
    double worst = 0.0;
    double scale = 0.0;
    for (double g : grad) scale = std::max(scale, std::abs(g));
    scale = std::max(scale, 1e-12);
    for (std::size_t j = 0; j < p.phases.size(); ++j) {
        Protocol plus = p, minus = p;
        plus.phases[j] += h;
        minus.phases[j] -= h;
        double fd =
            (objective(plus, target, component).value - objective(minus, target, component).value) /
            (2.0 * h);
        worst = std::max(worst, std::abs(fd - grad[j]) / scale);
    }
    return worst;
}

namespace {

/// Palindromic embedding: m free parameters -> k+1 phases.
std::vector<double> expand_symmetric(const std::vector<double>& free, int k) {
    std::vector<double> out(static_cast<std::size_t>(k) + 1);
    for (int j = 0; j <= k; ++j) {
        int mirrored = std::min(j, k - j);
        out[static_cast<std::size_t>(j)] = free[static_cast<std::size_t>(mirrored)];
    }
    return out;
}

std::vector<double> collapse_gradient_symmetric(const std::vector<double>& grad, int k) {
    std::size_t m = static_cast<std::size_t>(k / 2) + 1;
    std::vector<double> out(m, 0.0);
    for (int j = 0; j <= k; ++j) {
        out[static_cast<std::size_t>(std::min(j, k - j))] += grad[static_cast<std::size_t>(j)];
    }
    return out;
}

struct BfgsProblem {
    int k;  // oracle count
    bool symmetric;
    FitComponent component;
    const FunctionSample* target;

    std::size_t dim() const {
        return symmetric ? static_cast<std::size_t>(k / 2) + 1 : static_cast<std::size_t>(k) + 1;
    }
    Protocol protocol_for(const std::vector<double>& params) const {
        return Protocol::standard(symmetric ? expand_symmetric(params, k) : params);
    }
    double value(const std::vector<double>& params) const {
        return objective(protocol_for(params), *target, component).value;
    }
    std::vector<double> gradient(const std::vector<double>& params) const {
        auto g = objective_gradient(protocol_for(params), *target, component);
        return symmetric ? collapse_gradient_symmetric(g, k) : g;
    }
};

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

std::vector<double> bfgs_minimize(const BfgsProblem& prob, std::vector<double> x,
                                  int max_iterations, double gradient_stop) {
    const std::size_t n = x.size();
    std::vector<double> h(n * n, 0.0);  // inverse Hessian approximation
    for (std::size_t i = 0; i < n; ++i) h[i * n + i] = 1.0;
    std::vector<double> g = prob.gradient(x);
    double f = prob.value(x);
    for (int iter = 0; iter < max_iterations; ++iter) {
        if (inf_norm(g) <= gradient_stop) break;
        std::vector<double> d(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) d[i] -= h[i * n + j] * g[j];
        double slope = 0.0;
        for (std::size_t i = 0; i < n; ++i) slope += g[i] * d[i];
        if (slope > -1e-18) {  // not a descent direction: reset to steepest
            for (std::size_t i = 0; i < n; ++i) {
                d[i] = -g[i];
                for (std::size_t j = 0; j < n; ++j) h[i * n + j] = (i == j) ? 1.0 : 0.0;
            }
            slope = -inf_norm(g) * inf_norm(g);
            if (slope == 0.0) break;
        }
        double t = 1.0;
        std::vector<double> xn(n);
        double fn = f;
        bool ok = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (std::size_t i = 0; i < n; ++i) xn[i] = x[i] + t * d[i];
            fn = prob.value(xn);
            if (fn <= f + 1e-4 * t * slope) {
                ok = true;
                break;
            }
            t *= 0.5;
        }
        if (!ok) break;
        std::vector<double> gn = prob.gradient(xn);
        // BFGS update of the inverse Hessian.
        std::vector<double> s(n), y(n);
        double sy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = xn[i] - x[i];
            y[i] = gn[i] - g[i];
            sy += s[i] * y[i];
        }
        if (sy > 1e-14) {
            std::vector<double> hy(n, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) hy[i] += h[i * n + j] * y[j];
            double yhy = 0.0;
            for (std::size_t i = 0; i < n; ++i) yhy += y[i] * hy[i];
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    h[i * n + j] += ((sy + yhy) / (sy * sy)) * s[i] * s[j] -
                                    (hy[i] * s[j] + s[i] * hy[j]) / sy;
                }
            }
        }
        x = std::move(xn);
        g = std::move(gn);
        f = fn;
    }
    return x;
}

std::vector<double> fourier_init(const ChebSeries& target, int k, bool symmetric) {
    // Small-phase limit: Im P ~ sum_j phi_j cos((k - 2j) theta); seed each
    // frequency's coefficient split across its mirrored pair.
    std::vector<double> full(static_cast<std::size_t>(k) + 1, 0.0);
    for (int j = 0; j <= k; ++j) {
        int freq = std::abs(k - 2 * j);
        if (freq <= target.degree()) {
            double c = target.coeffs[static_cast<std::size_t>(freq)].real();
            full[static_cast<std::size_t>(j)] = (freq == 0) ? c : c / 2.0;
        }
    }
    if (!symmetric) return full;
    std::vector<double> half(static_cast<std::size_t>(k / 2) + 1);
    for (std::size_t j = 0; j < half.size(); ++j) half[j] = full[j];
    return half;
}

}  // namespace

FitResult fit_phases_best(const ChebSeries& target, int degree, const FitOptions& options) {
    if (degree < 0) fail_precondition("fit_phases: degree must be >= 0");
    if (options.check_parity && target.parity_defect(degree % 2) > 1e-12) {
        fail_precondition("fit_phases: target parity does not match the degree parity");
    }
    double sup = target.sup_norm(401);
    if (sup > 1.0 - options.subnormalization) {
        fail_precondition("fit_phases: target sup norm " + std::to_string(sup) +
                          " exceeds 1 - delta");
    }

    const int k = degree;
    const int loss_nodes = std::max(k + 1, 4 * std::max(1, k));
    FunctionSample loss;
    loss.grid = cheb_nodes(loss_nodes);
    loss.values.resize(loss.grid.size());
    for (std::size_t i = 0; i < loss.grid.size(); ++i) {
        loss.values[i] = target.eval_real(loss.grid[i]);
    }

    BfgsProblem prob{k, options.symmetric, options.component, &loss};
    const std::size_t dim = prob.dim();

    std::vector<std::vector<double>> starts;
    starts.emplace_back(dim, 0.0);
    starts.push_back(fourier_init(target, k, options.symmetric));
    {
        const double sigma = 0.1 / std::sqrt(static_cast<double>(std::max(1, k)));
        for (int s = 2; s < options.starts; ++s) {
            std::mt19937_64 rng(options.seed * 1000003ULL + static_cast<std::uint64_t>(s));
            std::normal_distribution<double> gauss(0.0, sigma);
            std::vector<double> x(dim);
            for (auto& v : x) v = gauss(rng);
            starts.push_back(std::move(x));
        }
    }

    // Verification grid: denser than the loss grid.
    FunctionSample verify;
    verify.grid = cheb_nodes(2 * loss_nodes + 1);
    verify.values.resize(verify.grid.size());
    for (std::size_t i = 0; i < verify.grid.size(); ++i) {
        verify.values[i] = target.eval_real(verify.grid[i]);
    }

    std::vector<FitResult> results(starts.size());
    parallel_for(starts.size(), [&](std::size_t s) {
        auto params =
            bfgs_minimize(prob, starts[s], options.max_iterations, options.gradient_stop);
        FitResult r;
        r.protocol = prob.protocol_for(params);
        r.objective = objective(r.protocol, loss, options.component).value;
        r.residual = objective(r.protocol, verify, options.component).sup_residual;
        r.best_start = static_cast<int>(s);
        results[s] = std::move(r);
    });

    FitResult best = results[0];
    for (const auto& r : results) {
        if (r.residual < best.residual) best = r;
    }
    best.converged = best.residual <= options.tolerance;
    return best;
}

FitResult fit_phases(const ChebSeries& target, int degree, const FitOptions& options) {
    FitResult r = fit_phases_best(target, degree, options);
    if (!r.converged) {
        fail_convergence("fit_phases: best residual " + std::to_string(r.residual) +
                         " above tolerance " + std::to_string(options.tolerance) + " after " +
                         std::to_string(options.starts) + " starts");
    }
    return r;
}

}  // namespace qspskt

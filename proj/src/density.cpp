#include "qspskt/density.hpp"

#include <algorithm>
#include <cmath>

namespace qspskt {

/// Non-center weights are split over their two visits; the center is visited
/// once.
Protocol fourier_word(const std::vector<double>& half_weights, const Oracle& oracle) {
    const int n = static_cast<int>(half_weights.size()) - 1;
    if (n < 0) fail_precondition("updown_word: need at least one weight");
    Protocol p;
    p.oracle = oracle;
    p.convention = "word";
    auto push_phase = [&](double w) {
        p.phases.push_back(w);
        p.word.push_back({StepKind::Phase, static_cast<int>(p.phases.size()) - 1, {}});
    };
    push_phase(n == 0 ? half_weights[0] : half_weights[0] / 2.0);
    for (int j = 1; j <= n; ++j) {
        p.word.push_back({StepKind::Oracle, -1, {}});
        push_phase(j == n ? half_weights[j] : half_weights[j] / 2.0);
    }
    for (int j = n - 1; j >= 0; --j) {
        p.word.push_back({StepKind::OracleInv, -1, {}});
        push_phase(half_weights[j] / 2.0);
    }
    return conjugate(p, plane_gate_z());
}

Protocol small_phase_protocol(const std::vector<double>& coeffs, double alpha, double tolerance,
                              const Oracle& oracle) {
    if (coeffs.empty()) fail_precondition("small_phase_protocol: empty coefficient list");
    if (alpha <= 0) fail_precondition("small_phase_protocol: alpha must be positive");
    double one_norm = 0.0;
    for (double c : coeffs) one_norm += std::abs(c);
    if (alpha < one_norm * one_norm / tolerance) {
        fail_precondition("small_phase_protocol: alpha below C^2/tolerance for C = " +
                          std::to_string(one_norm));
    }
    std::vector<double> w(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k) w[k] = coeffs[k] / alpha;
    return fourier_word(w, oracle);
}

double small_phase_prediction(const std::vector<double>& coeffs, double alpha, double theta,
                              PiVariant component) {
    double acc = 0.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        double angle = 2.0 * static_cast<double>(k) * theta;
        acc += (coeffs[k] / alpha) *
               (component == PiVariant::ImTopLeft ? std::cos(angle) : std::sin(angle));
    }
    return acc;
}

SmallPhaseDeviation small_phase_deviation(const Protocol& p, const std::vector<double>& coeffs,
                                          double alpha, int theta_nodes) {
    SmallPhaseDeviation dev;
    for (int j = 0; j < theta_nodes; ++j) {
        double theta = M_PI * (j + 0.5) / theta_nodes;
        double x = std::cos(theta);
        Unitary2 u = evaluate(p, x);
        double pred_z = small_phase_prediction(coeffs, alpha, theta, PiVariant::ImTopLeft);
        double pred_x = small_phase_prediction(coeffs, alpha, theta, PiVariant::ImTopRight);
        dev.component = std::max(dev.component,
                                 std::abs(project_pi(u, PiVariant::ImTopRight) - pred_x));
        Unitary2 m = Unitary2::identity();
        m.a += Complex{0, pred_z};
        m.d += Complex{0, -pred_z};
        m.b += Complex{0, pred_x};
        m.c += Complex{0, pred_x};
        dev.matrix = std::max(dev.matrix, distance(u, m));
    }
    return dev;
}

BlockFunction lcu_combine(const Protocol& p, int theta_nodes) {
    auto sym = check_symmetric(p, default_grid(p), tol().structure);
    if (!sym.pass) {
        fail_precondition("lcu_combine: protocol must be symmetric (deviation " +
                          std::to_string(sym.max_deviation) + ")");
    }
    Protocol rev = transform(p, TransformOp::Reverse);
    BlockFunction b;
    b.thetas.resize(theta_nodes);
    b.values.resize(theta_nodes);
    const Unitary2 sx = pauli_x();
    for (int j = 0; j < theta_nodes; ++j) {
        double theta = M_PI * (j + 0.5) / theta_nodes;
        double x = std::cos(theta);
        Unitary2 avg = (evaluate(p, x) + evaluate(rev, x)) * Complex{0.5, 0.0};
        Unitary2 block = (avg * sx) * Complex{0.0, -1.0};
        b.thetas[j] = theta;
        b.values[j] = block.a.real();
        b.max_abs = std::max(b.max_abs, std::abs(block.a.real()));
        b.max_imag_leak = std::max(b.max_imag_leak, std::abs(block.a.imag()));
    }
    return b;
}

std::array<Complex, 16> lcu_dilation(const Unitary2& u, const Unitary2& v) {
    // (H (x) I) . (|0><0| (x) U + |1><1| (x) V) . (H (x) I): top-left 2x2
    // block is (U + V)/2.
    std::array<Complex, 16> m{};
    auto put = [&](int r, int c, Complex val) { m[static_cast<std::size_t>(4 * r + c)] = val; };
    const Unitary2 sum = (u + v) * Complex{0.5, 0.0};
    const Unitary2 dif = (u - v) * Complex{0.5, 0.0};
    put(0, 0, sum.a), put(0, 1, sum.b), put(1, 0, sum.c), put(1, 1, sum.d);
    put(0, 2, dif.a), put(0, 3, dif.b), put(1, 2, dif.c), put(1, 3, dif.d);
    put(2, 0, dif.a), put(2, 1, dif.b), put(3, 0, dif.c), put(3, 1, dif.d);
    put(2, 2, sum.a), put(2, 3, sum.b), put(3, 2, sum.c), put(3, 3, sum.d);
    return m;
}

FunctionSample chebyshev_compose(const BlockFunction& b, int a) {
    if (a < 1 || a % 2 == 0) fail_precondition("chebyshev_compose: a must be odd and >= 1");
    FunctionSample out;
    out.grid = b.thetas;
    out.values.resize(b.values.size());
    for (std::size_t i = 0; i < b.values.size(); ++i) {
        double y = std::clamp(b.values[i], -1.0, 1.0);
        out.values[i] = std::cos(a * std::acos(y));
    }
    return out;
}

double cheb_inverse_central(double value, int a) {
    if (a < 1 || a % 2 == 0) fail_precondition("cheb_inverse_central: a must be odd");
    if (std::abs(value) > 1.0) fail_precondition("cheb_inverse_central: |value| <= 1 required");
    // T_a(sin psi) = s * sin(a psi) with s = (-1)^((a-1)/2) for odd a.
    double s = ((a - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
    double psi = std::asin(s * value) / a;
    return std::sin(psi);
}

int truncation_degree(double m_bound, double rho, double eps) {
    if (rho <= 1.0) fail_precondition("truncation_degree: rho must exceed 1");
    if (eps <= 0 || m_bound <= 0) fail_precondition("truncation_degree: eps, M must be positive");
    double raw = std::log(2.0 * m_bound / ((rho - 1.0) * eps)) / std::log(rho);
    int n = static_cast<int>(std::ceil(raw));
    return std::max(0, n);
}

Protocol generalized_oracle_protocol(const Oracle& oracle, const std::vector<double>& weights,
                                     double alpha) {
    oracle.validate();
    std::vector<double> w(weights.size());
    for (std::size_t k = 0; k < weights.size(); ++k) w[k] = weights[k] / alpha;
    return fourier_word(w, oracle);
}

std::vector<double> modified_basis_projection(const Protocol& p, int k_max, int quadrature_nodes) {
    // Coefficients of Im<0|U|0> against cos(2k f(x)) with the pushforward
    // measure |f'(x)| dx; trapezoid rule on a uniform x grid.
    const Oracle& o = p.oracle;
    const int n = quadrature_nodes;
    std::vector<double> xs(n), fs(n), comp(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = -1.0 + 2.0 * i / (n - 1);
        fs[i] = o.f(xs[i]);
        comp[i] = project_pi(evaluate(p, xs[i]), PiVariant::ImTopLeft);
    }
    std::vector<double> coeffs(static_cast<std::size_t>(k_max) + 1, 0.0);
    for (int k = 0; k <= k_max; ++k) {
        double acc = 0.0;
        for (int i = 0; i + 1 < n; ++i) {
            double df = fs[i + 1] - fs[i];
            double mid = 0.5 * (comp[i] * std::cos(2 * k * fs[i]) +
                                comp[i + 1] * std::cos(2 * k * fs[i + 1]));
            acc += mid * df;
        }
        coeffs[static_cast<std::size_t>(k)] = (k == 0 ? 1.0 : 2.0) * acc / (fs.back() - fs.front());
    }
    return coeffs;
}

DiscretizeResult discretize_phases(const Protocol& p, const Su2Net& net, double eps_gate,
                                   int depth) {
    DiscretizeResult out;
    out.requested_eps_gate = eps_gate;
    Protocol r;
    r.oracle = p.oracle;
    r.convention = "word";
    for (const auto& s : p.word) {
        if (s.kind != StepKind::Phase) {
            Step copy = s;
            r.word.push_back(copy);
            continue;
        }
        double phi = p.phases.at(static_cast<std::size_t>(s.phase_index));
        Unitary2 target = rotation({0, 0, 1}, phi);
        SkResult sk = solovay_kitaev(target, depth, net);
        double err = distance(sk.word.product, target);
        out.per_phase_error.push_back(err);
        out.achieved_eps_gate = std::max(out.achieved_eps_gate, err);
        for (int g : sk.word.indices) {
            r.word.push_back(
                {StepKind::Fixed, -1, net.instructions.gates.at(static_cast<std::size_t>(g))});
        }
    }
    for (double e : out.per_phase_error) out.ledger_bound += e;
    if (out.achieved_eps_gate > eps_gate) {
        fail_precondition("discretize_phases: achievable gate error " +
                          std::to_string(out.achieved_eps_gate) + " exceeds requested " +
                          std::to_string(eps_gate));
    }
    out.protocol = std::move(r);
    return out;
}

}  // namespace qspskt

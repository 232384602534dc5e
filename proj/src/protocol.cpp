#include "qspskt/protocol.hpp"

#include <algorithm>
#include <cmath>

namespace qspskt {

Oracle Oracle::generalized_named(const std::string& name, double slope) {
    Oracle o;
    o.kind = Kind::Generalized;
    o.name = name;
    o.slope = slope;
    o.validate();
    return o;
}

Oracle Oracle::generalized_sampled(std::vector<double> grid, std::vector<double> values) {
    Oracle o;
    o.kind = Kind::Generalized;
    o.grid = std::move(grid);
    o.values = std::move(values);
    o.validate();
    return o;
}

double Oracle::f(double x) const {
    if (kind == Kind::Standard || name == "arccos") return std::acos(std::clamp(x, -1.0, 1.0));
    if (name == "linear") return slope * x;
    // sampled map, linear interpolation
    const auto& g = grid;
    if (x <= g.front()) return values.front();
    if (x >= g.back()) return values.back();
    auto it = std::upper_bound(g.begin(), g.end(), x);
    std::size_t i = static_cast<std::size_t>(it - g.begin());
    double t = (x - g[i - 1]) / (g[i] - g[i - 1]);
    return (1.0 - t) * values[i - 1] + t * values[i];
}

Unitary2 Oracle::evaluate(double x) const {
    if (kind == Kind::Standard) {
        // exp(i arccos(x) sigma_x) = [[x, i sqrt(1-x^2)], [i sqrt(1-x^2), x]]
        double s = std::sqrt(std::max(0.0, 1.0 - x * x));
        return Unitary2::raw({x, 0.0}, {0.0, s}, {0.0, s}, {x, 0.0});
    }
    double a = f(x);
    return Unitary2::raw({std::cos(a), 0.0}, {0.0, std::sin(a)}, {0.0, std::sin(a)},
                         {std::cos(a), 0.0});
}

bool Oracle::same_as(const Oracle& o) const {
    if (kind != o.kind) return false;
    if (kind == Kind::Standard) return true;
    return name == o.name && slope == o.slope && grid == o.grid && values == o.values;
}

void Oracle::validate() const {
    if (kind == Kind::Standard) return;
    if (!name.empty() && name != "arccos" && name != "linear") {
        fail_precondition("unknown generalized oracle map: " + name);
    }
    if (name == "linear" && slope == 0.0) fail_precondition("linear oracle needs nonzero slope");
    if (name.empty()) {
        if (grid.size() < 2 || grid.size() != values.size()) {
            fail_precondition("sampled oracle needs a grid with matching values");
        }
    }
    // |f'| in [fmin, fmax], fmin > 0, and strict monotonicity on a dense grid.
    const int n = 512;
    double prev = f(-1.0);
    int sign = 0;
    for (int i = 1; i <= n; ++i) {
        double x = -1.0 + 2.0 * i / n;
        double cur = f(x);
        double d = cur - prev;
        int s = d > 0 ? 1 : (d < 0 ? -1 : 0);
        if (s == 0) fail_precondition("generalized oracle map must be strictly monotone");
        if (sign == 0) sign = s;
        if (s != sign) fail_precondition("generalized oracle map must be strictly monotone");
        double deriv = std::abs(d) * n / 2.0;
        if (deriv < 1e-6 || deriv > 1e6) {
            fail_precondition("generalized oracle derivative out of bounds");
        }
        prev = cur;
    }
    double lo = f(-1.0), hi = f(1.0);
    if (std::min(lo, hi) < -M_PI - 1e-9 || std::max(lo, hi) > M_PI + 1e-9) {
        fail_precondition("generalized oracle range must lie in [-pi, pi]");
    }
}

Protocol Protocol::standard(std::vector<double> phases, Oracle oracle) {
    if (phases.empty()) fail_precondition("standard protocol needs at least one phase");
    Protocol p;
    p.phases = std::move(phases);
    p.oracle = std::move(oracle);
    p.word.push_back({StepKind::Phase, 0, {}});
    for (int j = 1; j < static_cast<int>(p.phases.size()); ++j) {
        p.word.push_back({StepKind::Oracle, -1, {}});
        p.word.push_back({StepKind::Phase, j, {}});
    }
    return p;
}

Protocol Protocol::identity() {
    Protocol p;
    p.convention = "word";
    return p;
}

int Protocol::phase_length() const {
    int n = 0;
    for (const auto& s : word) n += (s.kind == StepKind::Phase);
    return n;
}

int Protocol::oracle_length() const {
    int n = 0;
    for (const auto& s : word) n += (s.kind == StepKind::Oracle || s.kind == StepKind::OracleInv);
    return n;
}

bool Protocol::is_standard_convention() const {
    if (word.empty() || word[0].kind != StepKind::Phase || word[0].phase_index != 0) return false;
    int expect_phase = 1;
    for (std::size_t i = 1; i < word.size(); i += 2) {
        if (word[i].kind != StepKind::Oracle) return false;
        if (i + 1 >= word.size() || word[i + 1].kind != StepKind::Phase ||
            word[i + 1].phase_index != expect_phase) {
            return false;
        }
        ++expect_phase;
    }
    return word.size() == 2 * phases.size() - 1;
}

namespace {

Unitary2 phase_gate(double phi) {
    return Unitary2::raw({std::cos(phi), std::sin(phi)}, {0, 0}, {0, 0},
                         {std::cos(phi), -std::sin(phi)});
}

}  // namespace

Unitary2 evaluate(const Protocol& p, double x) {
    if (std::abs(x) > 1.0 + 1e-12) fail_precondition("signal x must lie in [-1, 1]");
    x = std::clamp(x, -1.0, 1.0);
    Unitary2 u = Unitary2::identity();
    Unitary2 w;       // oracle cache
    bool have_w = false;
    for (const auto& s : p.word) {
        switch (s.kind) {
            case StepKind::Phase:
                u = u * phase_gate(p.phases.at(static_cast<std::size_t>(s.phase_index)));
                break;
            case StepKind::Oracle:
                if (!have_w) {
                    w = p.oracle.evaluate(x);
                    have_w = true;
                }
                u = u * w;
                break;
            case StepKind::OracleInv:
                if (!have_w) {
                    w = p.oracle.evaluate(x);
                    have_w = true;
                }
                u = u * w.dagger();
                break;
            case StepKind::Fixed:
                u = u * s.fixed;
                break;
        }
    }
    return u;
}

std::vector<Unitary2> evaluate_grid(const Protocol& p, const std::vector<double>& xs) {
    std::vector<Unitary2> out(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) { out[i] = evaluate(p, xs[i]); });
    return out;
}

Protocol concat(const Protocol& p, const Protocol& q) {
    if (p.oracle_length() > 0 && q.oracle_length() > 0 && !p.oracle.same_as(q.oracle)) {
        fail_precondition("concat requires protocols sharing one oracle");
    }
    Protocol r = p;
    r.convention = "word";
    if (p.oracle_length() == 0 && q.oracle_length() > 0) r.oracle = q.oracle;
    const int off = static_cast<int>(p.phases.size());
    r.phases.insert(r.phases.end(), q.phases.begin(), q.phases.end());
    for (Step s : q.word) {
        if (s.kind == StepKind::Phase) s.phase_index += off;
        r.word.push_back(s);
    }
    return r;
}

double project_pi(const Unitary2& u, PiVariant v) {
    return v == PiVariant::ImTopLeft ? u.a.imag() : u.b.imag();
}

PolynomialPair extract_polynomials(const Protocol& p, double tolerance) {
    const int k = p.oracle_length();
    PolynomialPair out;
    {
        auto xs = cheb_nodes(k + 1);
        std::vector<Complex> vals(xs.size());
        for (std::size_t j = 0; j < xs.size(); ++j) vals[j] = evaluate(p, xs[j]).a;
        out.p = cheb_fit(vals);
    }
    if (k >= 1) {
        auto xs = cheb_nodes(k);  // interior nodes, avoids x = +-1
        std::vector<Complex> vals(xs.size());
        for (std::size_t j = 0; j < xs.size(); ++j) {
            double s = std::sqrt(1.0 - xs[j] * xs[j]);
            vals[j] = evaluate(p, xs[j]).b / Complex{0.0, s};
        }
        out.q = cheb_fit(vals);
    } else {
        out.q.coeffs = {};
    }
    // Residual on a 4x denser interior grid.
    auto dense = cheb_nodes(4 * (k + 1));
    for (double x : dense) {
        Unitary2 u = evaluate(p, x);
        double s = std::sqrt(std::max(0.0, 1.0 - x * x));
        Complex qq = out.q.coeffs.empty() ? Complex{0, 0} : out.q.eval(x);
        out.residual = std::max(out.residual, std::abs(u.a - out.p.eval(x)));
        out.residual = std::max(out.residual, std::abs(u.b - Complex{0.0, s} * qq));
    }
    if (out.residual > tolerance) {
        fail_precondition("extract_polynomials: entries are not polynomial (residual " +
                          std::to_string(out.residual) + ")");
    }
    return out;
}

Protocol transform(const Protocol& p, TransformOp op) {
    switch (op) {
        case TransformOp::Reverse:
            return transpose(p);
        case TransformOp::Negate: {
            Protocol r = p;
            for (double& ph : r.phases) ph = -ph;
            return r;
        }
        case TransformOp::SignalNegate: {
            Protocol r;
            r.phases = p.phases;
            r.oracle = p.oracle;
            r.convention = "word";
            const Unitary2 iz = Unitary2::raw({0, 1}, {0, 0}, {0, 0}, {0, -1});  // i sigma_z
            for (const auto& s : p.word) {
                if (s.kind == StepKind::Oracle || s.kind == StepKind::OracleInv) {
                    r.word.push_back({StepKind::Fixed, -1, iz});
                    r.word.push_back(s);
                    r.word.push_back({StepKind::Fixed, -1, iz.dagger()});
                } else {
                    r.word.push_back(s);
                }
            }
            if (p.oracle_length() % 2 == 1) {
                const Unitary2 minus_i = Unitary2::raw({-1, 0}, {0, 0}, {0, 0}, {-1, 0});
                r.word.push_back({StepKind::Fixed, -1, minus_i});
            }
            return r;
        }
    }
    fail_precondition("unknown transform");
}

Protocol conjugate(const Protocol& p, const Unitary2& c) {
    Protocol r;
    r.phases = p.phases;
    r.oracle = p.oracle;
    r.convention = "word";
    r.word.push_back({StepKind::Fixed, -1, c});
    r.word.insert(r.word.end(), p.word.begin(), p.word.end());
    r.word.push_back({StepKind::Fixed, -1, c.dagger()});
    return r;
}

Protocol inverse(const Protocol& p) {
    Protocol r;
    r.oracle = p.oracle;
    r.convention = "word";
    for (auto it = p.word.rbegin(); it != p.word.rend(); ++it) {
        Step s = *it;
        switch (s.kind) {
            case StepKind::Phase: {
                r.phases.push_back(-p.phases.at(static_cast<std::size_t>(s.phase_index)));
                s.phase_index = static_cast<int>(r.phases.size()) - 1;
                break;
            }
            case StepKind::Oracle:
                s.kind = StepKind::OracleInv;
                break;
            case StepKind::OracleInv:
                s.kind = StepKind::Oracle;
                break;
            case StepKind::Fixed:
                s.fixed = s.fixed.dagger();
                break;
        }
        r.word.push_back(s);
    }
    return r;
}

Protocol transpose(const Protocol& p) {
    Protocol r;
    r.oracle = p.oracle;
    r.convention = p.is_standard_convention() ? "standard" : "word";
    for (auto it = p.word.rbegin(); it != p.word.rend(); ++it) {
        Step s = *it;
        switch (s.kind) {
            case StepKind::Phase: {
                r.phases.push_back(p.phases.at(static_cast<std::size_t>(s.phase_index)));
                s.phase_index = static_cast<int>(r.phases.size()) - 1;
                break;
            }
            case StepKind::Oracle:
            case StepKind::OracleInv:
                break;  // W and W^dag are symmetric matrices
            case StepKind::Fixed:
                s.fixed = s.fixed.transpose();
                break;
        }
        r.word.push_back(s);
    }
    return r;
}

Protocol conjugate_entrywise(const Protocol& p) {
    Protocol r;
    r.oracle = p.oracle;
    r.convention = "word";
    r.phases.reserve(p.phases.size());
    for (Step s : p.word) {
        switch (s.kind) {
            case StepKind::Phase: {
                r.phases.push_back(-p.phases.at(static_cast<std::size_t>(s.phase_index)));
                s.phase_index = static_cast<int>(r.phases.size()) - 1;
                break;
            }
            case StepKind::Oracle:
                s.kind = StepKind::OracleInv;  // conj(W) = W^dag
                break;
            case StepKind::OracleInv:
                s.kind = StepKind::Oracle;
                break;
            case StepKind::Fixed:
                s.fixed = s.fixed.conjugate();
                break;
        }
        r.word.push_back(s);
    }
    return r;
}

Unitary2 plane_gate_x() { return rotation({1, 0, 0}, M_PI / 4); }
Unitary2 plane_gate_z() { return rotation({0, 0, 1}, M_PI / 4); }

StructureReport check_symmetric(const Protocol& p, const std::vector<double>& grid,
                                double threshold) {
    const Unitary2 sy = pauli_y();
    StructureReport rep;
    for (double x : grid) {
        Unitary2 u = evaluate(p, x);
        rep.max_deviation = std::max(rep.max_deviation, distance(sy * u * sy, u.dagger()));
    }
    rep.pass = rep.max_deviation <= threshold;
    return rep;
}

StructureReport check_planar(const Protocol& p, const std::array<double, 3>& normal,
                             const std::vector<double>& grid, double threshold) {
    StructureReport rep;
    for (double x : grid) {
        auto v = bloch_sin_vector(evaluate(p, x));
        double dev = std::abs(v[0] * normal[0] + v[1] * normal[1] + v[2] * normal[2]);
        rep.max_deviation = std::max(rep.max_deviation, dev);
    }
    rep.pass = rep.max_deviation <= threshold;
    return rep;
}

std::vector<double> default_grid(const Protocol& p) {
    return cheb_nodes(2 * std::max(1, p.oracle_length()) + 1);
}

}  // namespace qspskt

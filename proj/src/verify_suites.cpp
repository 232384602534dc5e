#include "qspskt/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "qspskt/commutator.hpp"
#include "qspskt/density.hpp"
#include "qspskt/identity.hpp"
#include "qspskt/protocol.hpp"
#include "qspskt/skt.hpp"
#include "qspskt/words.hpp"

namespace qspskt {

namespace {

double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    // Least squares on log-log.
    const std::size_t n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double lx = std::log(xs[i]), ly = std::log(std::max(ys[i], 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

VerifyReport suite_qsp_invariants() {
    VerifyReport rep;
    rep.suite = "qsp-invariants";
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> uphase(-M_PI, M_PI);
    std::uniform_int_distribution<int> udeg(1, 16);
    double worst_unitarity = 0, worst_parity = 0, worst_norm = 0;
    auto nodes = cheb_nodes(101);
    for (int trial = 0; trial < 50; ++trial) {
        int k = udeg(rng);
        std::vector<double> phases(static_cast<std::size_t>(k) + 1);
        for (auto& p : phases) p = uphase(rng);
        Protocol proto = Protocol::standard(phases);
        auto poly = extract_polynomials(proto);
        for (double x : nodes) {
            Unitary2 u = evaluate(proto, x);
            worst_unitarity = std::max(worst_unitarity, u.unitarity_defect());
            Complex pv = poly.p.eval(x), qv = poly.q.eval(x);
            double norm = std::norm(pv) + (1 - x * x) * std::norm(qv);
            worst_norm = std::max(worst_norm, std::abs(norm - 1.0));
            Complex p_neg = poly.p.eval(-x);
            double sign = (k % 2 == 0) ? 1.0 : -1.0;
            worst_parity = std::max(worst_parity, std::abs(p_neg - sign * pv));
        }
    }
    rep.rows.push_back({"unitarity", worst_unitarity <= 1e-12, worst_unitarity, 1e-12, ""});
    rep.rows.push_back({"parity", worst_parity <= 1e-9, worst_parity, 1e-9, ""});
    rep.rows.push_back({"normalization |P|^2+(1-x^2)|Q|^2", worst_norm <= 1e-9, worst_norm, 1e-9,
                        ""});
    return rep;
}

VerifyReport suite_nested_scaling() {
    VerifyReport rep;
    rep.suite = "nested-commutator-scaling";
    std::vector<double> eps_list{1e-1, 3e-2, 1e-2};
    std::vector<double> resids;
    double worst_planar = 0.0;
    auto grid = cheb_nodes(33);
    for (double eps : eps_list) {
        Protocol v0 = fourier_word({0.1 * eps, 0.8 * eps, 0.3 * eps});
        Protocol v1 = fourier_word({-0.2 * eps, -0.5 * eps, 0.6 * eps});
        auto q = planar_quadruple(v0, v1);
        Protocol n = nested_commutator(q);
        auto pl = check_planar(n, {0, 1, 0}, grid, 1e-9);
        worst_planar = std::max(worst_planar, pl.max_deviation);
        auto p0 = extract_polynomials(v0);
        auto p1 = extract_polynomials(v1);
        double worst = 0.0;
        for (double x : grid) {
            Unitary2 pred = leading_order_prediction(p0.p, p0.q, p1.p, p1.q, x, 1.0);
            worst = std::max(worst, distance(evaluate(n, x), pred));
        }
        resids.push_back(worst);
    }
    double slope = loglog_slope(eps_list, resids);
    rep.rows.push_back({"leading-order residual slope", std::abs(slope - 5.0) <= 0.3, slope, 5.0,
                        "window +-0.3"});
    rep.rows.push_back({"output planarity", worst_planar <= 1e-9, worst_planar, 1e-9, ""});
    return rep;
}

VerifyReport suite_planarity() {
    VerifyReport rep;
    rep.suite = "planarity";
    auto grid = cheb_nodes(33);
    // Nested commutator stays XZ-planar.
    Protocol v0 = fourier_word({0.05, 0.03});
    Protocol v1 = fourier_word({-0.04, 0.06});
    Protocol n = nested_commutator(planar_quadruple(v0, v1));
    auto pl = check_planar(n, {0, 1, 0}, grid, 1e-9);
    rep.rows.push_back({"nested commutator XZ-planar", pl.pass, pl.max_deviation, 1e-9, ""});
    // Reversal invariance of the nested commutator.
    Protocol nr = transform(n, TransformOp::Reverse);
    double worst = 0.0;
    for (double x : grid) worst = std::max(worst, distance(evaluate(n, x), evaluate(nr, x)));
    rep.rows.push_back({"nested commutator reversal-invariant", worst <= 1e-10, worst, 1e-10, ""});
    // Identity perturbation planarity.
    Protocol pert = identity_perturbation(Protocol::standard({0.3, 0.2, 0.3}), 1e-2);
    auto pl2 = check_planar(pert, {0, 1, 0}, grid, 1e-9);
    rep.rows.push_back({"identity perturbation XZ-planar", pl2.pass, pl2.max_deviation, 1e-9, ""});
    return rep;
}

VerifyReport suite_commutator_bounds() {
    VerifyReport rep;
    rep.suite = "commutator-bounds";
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    auto random_axis = [&]() {
        std::array<double, 3> a{uni(rng), uni(rng), uni(rng)};
        double n = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
        if (n < 1e-3) return std::array<double, 3>{0, 0, 1};
        return std::array<double, 3>{a[0] / n, a[1] / n, a[2] / n};
    };
    const double delta = 0.08, Delta = 0.02;
    double worst_ratio_std = 0.0, worst_ratio_nested = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        Unitary2 v = rotation(random_axis(), delta * 0.45 * std::abs(uni(rng)));
        Unitary2 w = rotation(random_axis(), delta * 0.45 * std::abs(uni(rng)));
        Unitary2 rv = rotation(random_axis(), Delta * 0.45 * std::abs(uni(rng)));
        Unitary2 rw = rotation(random_axis(), Delta * 0.45 * std::abs(uni(rng)));
        Unitary2 vt = rv * v, wt = rw * w;
        double d_approx = std::max(distance(v, vt), distance(w, wt));
        double d_ident = std::max(distance(Unitary2::identity(), v),
                                  distance(Unitary2::identity(), w));
        double mismatch = distance(group_commutator(v, w), group_commutator(vt, wt));
        double bound = commutator_error_bound(d_approx, d_ident);
        if (bound > 0) worst_ratio_std = std::max(worst_ratio_std, mismatch / bound);
        // Nested: [[V,W],[conj V, conj W]] vs the perturbed copy.
        Unitary2 nv = group_commutator(group_commutator(v, w),
                                       group_commutator(v.conjugate(), w.conjugate()));
        Unitary2 nvt = group_commutator(group_commutator(vt, wt),
                                        group_commutator(vt.conjugate(), wt.conjugate()));
        double nested_mismatch = distance(nv, nvt);
        double nested_bound = nested_error_bound(d_approx, d_ident) * 1.5;
        if (nested_bound > 0) {
            worst_ratio_nested = std::max(worst_ratio_nested, nested_mismatch / nested_bound);
        }
    }
    rep.rows.push_back({"standard mismatch <= Eq. bound", worst_ratio_std <= 1.0, worst_ratio_std,
                        1.0, "ratio to bound"});
    rep.rows.push_back({"nested mismatch <= 32*D*d*(1+pad)*1.5", worst_ratio_nested <= 1.0,
                        worst_ratio_nested, 1.0, "ratio to bound"});
    return rep;
}

VerifyReport suite_gj_counts() {
    VerifyReport rep;
    rep.suite = "gj-counts";
    for (int r = 0; r <= 10; ++r) {
        for (int eta = 1; eta <= 6; ++eta) {
            BigInt series = constrained_count(r, eta);
            BigInt brute = constrained_count_brute(r, eta);
            std::ostringstream note;
            note << "r=" << r << " eta=" << eta << " count=" << series;
            rep.rows.push_back({"gj r=" + std::to_string(r) + " eta=" + std::to_string(eta),
                                series == brute, static_cast<double>(series == brute ? 1 : 0), 1.0,
                                note.str()});
        }
    }
    return rep;
}

}  // namespace

std::vector<std::string> verify_suite_names() {
    return {"qsp-invariants", "nested-commutator-scaling", "planarity", "commutator-bounds",
            "gj-counts"};
}

VerifyReport run_verify_suite(const std::string& name) {
    if (name == "qsp-invariants") return suite_qsp_invariants();
    if (name == "nested-commutator-scaling") return suite_nested_scaling();
    if (name == "planarity") return suite_planarity();
    if (name == "commutator-bounds") return suite_commutator_bounds();
    if (name == "gj-counts") return suite_gj_counts();
    std::string names;
    for (const auto& n : verify_suite_names()) names += (names.empty() ? "" : ", ") + n;
    fail_precondition("unknown verify suite '" + name + "'; available: " + names);
}

}  // namespace qspskt

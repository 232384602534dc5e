#include "qspskt/identity.hpp"

#include <cmath>

namespace qspskt {

namespace {

void require_symmetric(const Protocol& psi, const char* who) {
    auto rep = check_symmetric(psi, default_grid(psi), tol().structure);
    if (!rep.pass) {
        fail_precondition(std::string(who) + ": protocol is not symmetric (deviation " +
                          std::to_string(rep.max_deviation) + ")");
    }
}

Protocol with_first_phase_shift(const Protocol& p, double eps) {
    Protocol r = p;
    if (r.phases.empty()) fail_precondition("perturbation needs at least one phase");
    r.phases.front() += eps;
    return r;
}

}  // namespace

Protocol identity_perturbation(const Protocol& psi, double eps) {
    require_symmetric(psi, "identity_perturbation");
    if (std::abs(eps) > 0.3) fail_precondition("identity_perturbation: eps must lie in [-0.3, 0.3]");
    Protocol shifted = with_first_phase_shift(psi, eps);
    Protocol outer_left = transform(transform(transform(shifted, TransformOp::Negate),
                                              TransformOp::Reverse),
                                    TransformOp::SignalNegate);
    Protocol outer_right =
        transform(transform(shifted, TransformOp::Negate), TransformOp::SignalNegate);
    Protocol mid = concat(psi, transform(psi, TransformOp::Reverse));
    return concat(concat(outer_left, mid), outer_right);
}

Protocol perturbation_core(const Protocol& psi) {
    const auto& ph = psi.phases;
    std::vector<double> anti;
    for (std::size_t i = ph.size(); i-- > 1;) anti.push_back(-ph[i]);
    anti.push_back(0.0);
    for (std::size_t i = 1; i < ph.size(); ++i) anti.push_back(ph[i]);
    return Protocol::standard(anti, psi.oracle);
}

Unitary2 perturbation_first_order(const Protocol& psi, double x) {
    Unitary2 ua = evaluate(perturbation_core(psi), x);
    double pz = ua.a.real();
    double px = ua.b.real();
    Unitary2 d = Unitary2::raw({0, 0}, {0, 0}, {0, 0}, {0, 0});
    d.a = Complex{0.0, -2.0 * pz};
    d.d = Complex{0.0, 2.0 * pz};
    d.b = Complex{0.0, -2.0 * px};
    d.c = Complex{0.0, -2.0 * px};
    return d;
}

Protocol conjugated_perturbation(const Protocol& psi, double eps, PerturbVariant variant) {
    switch (variant) {
        case PerturbVariant::Base:
            return identity_perturbation(psi, eps);
        case PerturbVariant::X: {
            const Unitary2 ix = Unitary2::raw({0, 0}, {0, 1}, {0, 1}, {0, 0});  // i sigma_x
            return conjugate(identity_perturbation(psi, eps), ix);
        }
        case PerturbVariant::H: {
            const double r = 1.0 / std::sqrt(2.0);
            const Unitary2 ih = Unitary2::raw({0, r}, {0, r}, {0, r}, {0, -r});  // i H
            return conjugate(identity_perturbation(psi, eps), ih);
        }
        case PerturbVariant::ShiftZ:
        case PerturbVariant::ShiftX: {
            Protocol base = identity_perturbation(psi, eps);
            Unitary2 g = variant == PerturbVariant::ShiftZ ? rotation({0, 0, 1}, eps / 2.0)
                                                           : rotation({1, 0, 0}, eps / 2.0);
            Protocol side;
            side.convention = "word";
            side.oracle = base.oracle;
            side.word.push_back({StepKind::Fixed, -1, g});
            return concat(concat(side, base), side);
        }
    }
    fail_precondition("unknown perturbation variant");
}

ShiftResult shift_to_identity(const UnitarySample& target, const Protocol& half) {
    if (target.grid.size() != target.values.size() || target.grid.empty()) {
        fail_precondition("shift_to_identity: malformed target sample");
    }
    Protocol rev = transform(half, TransformOp::Reverse);
    ShiftResult out;
    out.residual.grid = target.grid;
    out.residual.values.resize(target.grid.size());
    const Unitary2 sy = pauli_y();
    double target_planarity = 0.0;
    for (const auto& ax : target.values) {
        target_planarity = std::max(target_planarity, distance(sy * ax * sy, ax.dagger()));
    }
    if (target_planarity > 1e-8) {
        fail_precondition("shift_to_identity: target is not XZ-planar (deviation " +
                          std::to_string(target_planarity) + ")");
    }
    double pre_shift_err = 0.0;
    for (std::size_t i = 0; i < target.grid.size(); ++i) {
        double x = target.grid[i];
        const Unitary2& ax = target.values[i];
        Unitary2 u = evaluate(half, x);
        Unitary2 ur = evaluate(rev, x);
        pre_shift_err = std::max(pre_shift_err, distance(ax, u * ur));
        Unitary2 res = u.dagger() * ax * ur.dagger();
        out.residual.values[i] = res;
        out.max_distance_to_identity =
            std::max(out.max_distance_to_identity, distance(res, Unitary2::identity()));
        out.planarity_deviation =
            std::max(out.planarity_deviation, distance(sy * res * sy, res.dagger()));
    }
    if (pre_shift_err >= 0.5) {
        fail_precondition("shift_to_identity: approximation too far from target (sup distance " +
                          std::to_string(pre_shift_err) + ")");
    }
    return out;
}

Protocol independent_component_probe(const Protocol& psi_r, const Protocol& psi_s, double r,
                                     double s, double eps) {
    Protocol acc = identity_perturbation(psi_r, eps);
    acc = concat(acc, conjugated_perturbation(psi_s, eps, PerturbVariant::H));
    // Constant shifts enter as symmetric sandwiches, which preserve exact
    // planarity of each factor.
    auto sandwich = [&](const Protocol& core, const std::array<double, 3>& axis, double half) {
        Protocol side;
        side.convention = "word";
        side.oracle = core.oracle;
        side.word.push_back({StepKind::Fixed, -1, rotation(axis, half)});
        return concat(concat(side, core), side);
    };
    if (r != 0.0) acc = sandwich(acc, {0, 0, 1}, r * eps / 2.0);
    if (s != 0.0) acc = sandwich(acc, {1, 0, 0}, s * eps / 2.0);
    return acc;
}

Unitary2 probe_first_order(const Protocol& psi_r, const Protocol& psi_s, double r, double s,
                           double x) {
    Unitary2 dr = perturbation_first_order(psi_r, x);
    Unitary2 ds_base = perturbation_first_order(psi_s, x);
    // H conjugation swaps the sigma_z and sigma_x components.
    const double r2 = 1.0 / std::sqrt(2.0);
    const Unitary2 ih = Unitary2::raw({0, r2}, {0, r2}, {0, r2}, {0, -r2});
    Unitary2 ds = ih * ds_base * ih.dagger();
    Unitary2 total = dr + ds;
    total.a += Complex{0.0, r};
    total.d += Complex{0.0, -r};
    total.b += Complex{0.0, s};
    total.c += Complex{0.0, s};
    return total;
}

DifferenceReport symmetric_difference_form(const Protocol& v, const Protocol& v_perturbed,
                                           const std::vector<double>& grid) {
    DifferenceReport rep;
    Protocol vt = transpose(v);
    Protocol vpt = transpose(v_perturbed);
    double dist_check = 0.0;
    for (double x : grid) {
        Unitary2 a = evaluate(v, x), at = evaluate(vt, x);
        Unitary2 b = evaluate(v_perturbed, x), bt = evaluate(vpt, x);
        dist_check = std::max(dist_check, distance(a * at, b * bt));
        Unitary2 d = (b.dagger() * a) * (at * bt.dagger());
        auto comp = bloch_sin_vector(d);
        rep.max_x = std::max(rep.max_x, std::abs(comp[0]));
        rep.max_y = std::max(rep.max_y, std::abs(comp[1]));
        rep.max_z = std::max(rep.max_z, std::abs(comp[2]));
        rep.max_distance = std::max(rep.max_distance, distance(d, Unitary2::identity()));
    }
    if (dist_check >= 0.1) {
        fail_precondition("symmetric_difference_form: protocols are not close (sup distance " +
                          std::to_string(dist_check) + ")");
    }
    return rep;
}

}  // namespace qspskt

#include "qspskt/skt.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace qspskt {

InstructionSet InstructionSet::make(std::vector<std::string> names, std::vector<Unitary2> gates) {
    if (names.size() != gates.size() || gates.empty()) {
        fail_precondition("instruction set needs matching names and gates");
    }
    InstructionSet s;
    s.names = std::move(names);
    s.gates = std::move(gates);
    s.inverse_of.assign(s.gates.size(), -1);
    for (std::size_t i = 0; i < s.gates.size(); ++i) {
        if (!s.gates[i].is_special_unitary(1e-9)) {
            fail_precondition("instruction gate " + s.names[i] + " is not special-unitary");
        }
        for (std::size_t j = 0; j < s.gates.size(); ++j) {
            if (distance(s.gates[i].dagger(), s.gates[j]) <= 1e-12) {
                s.inverse_of[i] = static_cast<int>(j);
                break;
            }
        }
        if (s.inverse_of[i] < 0) {
            fail_precondition("instruction set is not closed under inverses (gate " + s.names[i] +
                              ")");
        }
    }
    return s;
}

InstructionSet InstructionSet::h_t_tdag() {
    const double r = 1.0 / std::sqrt(2.0);
    // SU(2) representatives: i*H and e^{-i pi/8} T. (i*H)^2 = -I, so the
    // SU(2) lift of the projective set {H, T, T^dag} needs both signs of iH
    // for inverse closure.
    Unitary2 h = Unitary2::raw({0, r}, {0, r}, {0, r}, {0, -r});
    Unitary2 t = rotation({0, 0, 1}, -M_PI / 8);
    return make({"H", "Hdg", "T", "Tdg"}, {h, h.dagger(), t, t.dagger()});
}

Unitary2 GateWord::remultiply(const InstructionSet& s) const {
    Unitary2 u = Unitary2::identity();
    for (int i : indices) u = u * s.gates.at(static_cast<std::size_t>(i));
    return u;
}

GateWord word_concat(const GateWord& a, const GateWord& b) {
    GateWord w;
    w.indices = a.indices;
    w.indices.insert(w.indices.end(), b.indices.begin(), b.indices.end());
    w.product = a.product * b.product;
    return w;
}

GateWord word_inverse(const GateWord& w, const InstructionSet& s) {
    GateWord r;
    r.indices.reserve(w.indices.size());
    for (auto it = w.indices.rbegin(); it != w.indices.rend(); ++it) {
        r.indices.push_back(s.inverse_of.at(static_cast<std::size_t>(*it)));
    }
    r.product = w.product.dagger();
    return r;
}

std::uint64_t Su2Net::bucket_key(const Unitary2& u) const {
    auto cell = [&](double v) {
        return static_cast<std::uint64_t>(static_cast<std::int64_t>(std::floor(v / bucket_cell)) +
                                          (1 << 20)) &
               0xFFFF;
    };
    return cell(u.a.real()) | (cell(u.a.imag()) << 16) | (cell(u.b.real()) << 32) |
           (cell(u.b.imag()) << 48);
}

void Su2Net::insert(GateWord w) {
    int idx = static_cast<int>(entries.size());
    buckets[bucket_key(w.product)].push_back(idx);
    entries.push_back(std::move(w));
}

namespace {

template <typename Fn>
void for_neighbor_cells(const Su2Net& net, const Unitary2& u, Fn&& fn) {
    const double h = net.bucket_cell;
    for (int da = -1; da <= 1; ++da)
        for (int db = -1; db <= 1; ++db)
            for (int dc = -1; dc <= 1; ++dc)
                for (int dd = -1; dd <= 1; ++dd) {
                    Unitary2 shifted = u;
                    shifted.a += Complex{da * h, db * h};
                    shifted.b += Complex{dc * h, dd * h};
                    auto it = net.buckets.find(net.bucket_key(shifted));
                    if (it == net.buckets.end()) continue;
                    for (int idx : it->second) fn(idx);
                }
}

}  // namespace

int Su2Net::nearest(const Unitary2& u) const {
    int best = -1;
    double best_d = 1e300;
    for_neighbor_cells(*this, u, [&](int idx) {
        double d = distance(entries[static_cast<std::size_t>(idx)].product, u);
        if (d < best_d) {
            best_d = d;
            best = idx;
        }
    });
    if (best < 0) {
        // Bucket miss (target far from every cell): brute scan.
        for (std::size_t i = 0; i < entries.size(); ++i) {
            double d = distance(entries[i].product, u);
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(i);
            }
        }
    }
    return best;
}

double Su2Net::nearest_distance(const Unitary2& u) const {
    int idx = nearest(u);
    return idx < 0 ? 1e300 : distance(entries[static_cast<std::size_t>(idx)].product, u);
}

Su2Net build_net(const InstructionSet& s, int max_len, double eps0, std::uint64_t seed,
                 CoverageReport* report) {
    if (eps0 <= 0 || max_len < 1) fail_precondition("build_net: need eps0 > 0 and max_len >= 1");
    Su2Net net;
    net.instructions = s;
    net.eps0 = eps0;
    net.bucket_cell = eps0 / 2.0;
    const double dedup = eps0 / 4.0;

    auto is_duplicate = [&](const Unitary2& u) {
        bool dup = false;
        for_neighbor_cells(net, u, [&](int idx) {
            if (!dup && distance(net.entries[static_cast<std::size_t>(idx)].product, u) <= dedup) {
                dup = true;
            }
        });
        return dup;
    };

    GateWord empty;
    empty.product = Unitary2::identity();
    net.insert(empty);
    std::deque<int> frontier{0};
    for (int len = 1; len <= max_len; ++len) {
        std::deque<int> next;
        for (int idx : frontier) {
            GateWord base = net.entries[static_cast<std::size_t>(idx)];
            for (int g = 0; g < s.size(); ++g) {
                GateWord w;
                w.indices = base.indices;
                w.indices.push_back(g);
                w.product = base.product * s.gates[static_cast<std::size_t>(g)];
                if (is_duplicate(w.product)) continue;
                next.push_back(static_cast<int>(net.entries.size()));
                net.insert(std::move(w));
            }
        }
        if (next.empty()) break;
        frontier = std::move(next);
    }

    // Coverage check on Haar samples.
    CoverageReport rep;
    std::mt19937_64 rng(seed);
    const int samples = 1000;
    std::vector<Unitary2> us(samples);
    for (auto& u : us) u = haar_random(rng);
    std::vector<double> dist_out(samples);
    parallel_for(samples, [&](std::size_t i) { dist_out[i] = net.nearest_distance(us[i]); });
    for (int i = 0; i < samples; ++i) {
        if (dist_out[i] > rep.worst) {
            rep.worst = dist_out[i];
            rep.worst_sample = us[static_cast<std::size_t>(i)];
        }
    }
    rep.pass = rep.worst <= eps0;
    if (report) *report = rep;
    if (!rep.pass) {
        fail_precondition("build_net coverage failed: worst uncovered sample at distance " +
                          std::to_string(rep.worst) + " > eps0 = " + std::to_string(eps0));
    }
    return net;
}

double commutator_angle(double phi) {
    Unitary2 k = group_commutator(rotation({1, 0, 0}, phi), rotation({0, 1, 0}, phi));
    return pauli_form(k).theta;
}

GcPair gc_decompose(const Unitary2& u) {
    const Unitary2 id = Unitary2::identity();
    if (distance(id, u) >= 0.5) {
        fail_precondition("gc_decompose: target must satisfy distance(I, U) < 0.5");
    }
    if (distance(id, u) <= 1e-15) return {id, id};
    PauliForm target = pauli_form(u);

    // Bisection for the equal-angle phi with commutator_angle(phi) = theta.
    double lo = 0.0, hi = M_PI / 2;
    while (commutator_angle(hi) < target.theta) hi = std::min(hi * 1.5, 1.5);
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (commutator_angle(mid) < target.theta ? lo : hi) = mid;
    }
    const double phi = 0.5 * (lo + hi);

    Unitary2 v0 = rotation({1, 0, 0}, phi);
    Unitary2 w0 = rotation({0, 1, 0}, phi);
    PauliForm base = pauli_form(group_commutator(v0, w0));

    // Similarity transform taking the base commutator axis onto the target axis.
    auto dot = base.axis[0] * target.axis[0] + base.axis[1] * target.axis[1] +
               base.axis[2] * target.axis[2];
    Unitary2 sgate = Unitary2::identity();
    if (dot < 1.0 - 1e-15) {
        std::array<double, 3> n{base.axis[1] * target.axis[2] - base.axis[2] * target.axis[1],
                                base.axis[2] * target.axis[0] - base.axis[0] * target.axis[2],
                                base.axis[0] * target.axis[1] - base.axis[1] * target.axis[0]};
        double nn = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
        if (nn < 1e-14) {
            // Antiparallel axes: rotate half-turn about any perpendicular.
            n = std::abs(base.axis[2]) < 0.9 ? std::array<double, 3>{-base.axis[1], base.axis[0], 0.0}
                                             : std::array<double, 3>{0.0, -base.axis[2], base.axis[1]};
            nn = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
        }
        double chi = std::acos(std::clamp(dot, -1.0, 1.0));
        sgate = rotation({n[0] / nn, n[1] / nn, n[2] / nn}, -chi / 2.0);
    }
    GcPair out{sgate * v0 * sgate.dagger(), sgate * w0 * sgate.dagger()};
    return out;
}

SkResult solovay_kitaev(const Unitary2& u, int depth, const Su2Net& net) {
    if (depth < 0) fail_precondition("solovay_kitaev: depth must be >= 0");
    if (net.entries.empty()) fail_precondition("solovay_kitaev: empty net");
    if (depth == 0) {
        SkResult r;
        r.word = net.entries[static_cast<std::size_t>(net.nearest(u))];
        r.reported_error = distance(r.word.product, u);
        r.level_errors = {r.reported_error};
        r.bound_ledger = {net.eps0};
        r.slot_count = 1;
        return r;
    }
    SkResult prev = solovay_kitaev(u, depth - 1, net);
    Unitary2 residual = u * prev.word.product.dagger();
    SkResult r;
    if (distance(Unitary2::identity(), residual) >= 0.5) {
        // Residual outside the balanced-commutator domain: keep the best
        // lower-depth word and flag the fallback.
        r = prev;
        r.gc_fallback = true;
        r.level_errors.push_back(r.reported_error);
        r.bound_ledger.push_back(r.bound_ledger.back());
        return r;
    }
    GcPair vw = gc_decompose(residual);
    SkResult va = solovay_kitaev(vw.v, depth - 1, net);
    SkResult wa = solovay_kitaev(vw.w, depth - 1, net);
    const auto& ins = net.instructions;
    GateWord word = word_concat(
        word_concat(word_concat(va.word, wa.word), word_concat(word_inverse(va.word, ins),
                                                               word_inverse(wa.word, ins))),
        prev.word);
    r.word = std::move(word);
    r.reported_error = distance(r.word.product, u);
    r.level_errors = prev.level_errors;
    r.level_errors.push_back(r.reported_error);
    // d(U, new) = d(residual, [Va, Wa]) <= bound(approx error, distance to I)
    // of the balanced pair, plus nothing else: the previous word cancels
    // exactly. Recorded as the recomputable per-level bound.
    const Unitary2 id = Unitary2::identity();
    double approx_err = std::max(va.reported_error, wa.reported_error);
    double ident_dist = std::max(distance(id, vw.v), distance(id, vw.w));
    r.bound_ledger = prev.bound_ledger;
    r.bound_ledger.push_back(commutator_error_bound(approx_err, ident_dist));
    r.gc_fallback = prev.gc_fallback || va.gc_fallback || wa.gc_fallback;
    r.slot_count = 2 * va.slot_count + 2 * wa.slot_count + prev.slot_count;
    return r;
}

double commutator_error_bound(double approx_err, double ident_dist) {
    if (approx_err < 0 || ident_dist < 0) fail_precondition("bound arguments must be nonnegative");
    const double D = approx_err, d = ident_dist;
    return 8 * D * d + 4 * D * d * d + 8 * D * D + 4 * D * D * D + D * D * D * D;
}

}  // namespace qspskt

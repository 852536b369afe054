#pragma once

// Self-checks and end-to-end pipelines built from the library, shared by the
// command-line tool and the test suites.

#include "crpvi/braid.hpp"
#include "crpvi/isomonodromy.hpp"
#include "crpvi/params.hpp"
#include "crpvi/triples.hpp"

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace crpvi {

struct CheckResult {
    std::string name;
    bool ok = true;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string detail;

    void fail(const std::string& why) {
        ok = false;
        ++failures;
        if (detail.empty()) detail = why;
    }
};

// Uniform rational with numerator in [-max_num, max_num] and denominator in
// [1, max_den].
inline Rational random_rational(std::mt19937_64& rng, long max_num = 20, long max_den = 12) {
    std::uniform_int_distribution<long> num(-max_num, max_num), den(1, max_den);
    return Rational(num(rng), den(rng));
}

inline Rational random_non_integer(std::mt19937_64& rng) {
    for (;;) {
        Rational r = random_rational(rng);
        if (!r.is_integer()) return r;
    }
}

// Non-integral lambda and mu with sum(lambda) == sum(mu).
inline LambdaMu random_balanced_lm(std::mt19937_64& rng) {
    LambdaMu lm;
    for (auto& l : lm.lambda) l = random_non_integer(rng);
    lm.mu[0] = random_rational(rng);
    lm.mu[1] = random_rational(rng);
    lm.mu[2] = lm.lambda[0] + lm.lambda[1] + lm.lambda[2] - lm.mu[0] - lm.mu[1];
    return lm;
}

inline CheckResult verify_lemma_params(std::size_t samples = 100, std::uint64_t seed = 1) {
    CheckResult r{"lemma-params"};
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
        const LambdaMu lm = random_balanced_lm(rng);
        const Rational x = random_rational(rng), y = random_rational(rng);
        const Rational lhs = f_squared(x, y, lm);
        for (const auto& perm : all_perms3()) {
            ++r.cases;
            const Theta th = theta_map(lm, perm);
            const Rational half(1, 2);
            const Rational rhs = f_hitchin_squared(x - th.v[0] * th.v[2] * half, y - th.v[1] * th.v[2] * half, th);
            if (lhs != rhs) r.fail("f^2 differs from the shifted Hitchin form at sample " + std::to_string(s));
        }
    }
    return r;
}

// Three independent confirmations of the cubic constants:
//  * float: sampled residues (built from the constants) have B4 spectrum -mu;
//  * exact: rational M with diagonal lambda gives w = c - x - y and
//    p + q = a x + b y + k with mu entering only through det(zI - M);
//  * normalize_cubic round-trips and agrees with the Hitchin normal form.
inline CheckResult verify_cubic(std::size_t samples = 100, std::uint64_t seed = 1) {
    CheckResult r{"cubic"};
    std::mt19937_64 rng(seed);
    const LambdaMu klein{{Rational(1, 2), Rational(1, 2), Rational(1, 2)}, {Rational(3, 14), Rational(5, 14), Rational(13, 14)}};
    for (std::size_t s = 0; s < samples; ++s) {
        ++r.cases;
        const LambdaMu lm = s % 2 == 0 ? klein : random_balanced_lm(rng);
        try {
            const ResidueConfig cfg = sample_residues(lm, seed + s);
            const CubicCoeffs cc = cubic_coeffs(lm);
            const InvariantReport inv = check_invariants(cfg);
            const double e_w = std::abs(cfg.w - (cc.c.to_double() - cfg.x - cfg.y));
            const double e_pq = std::abs(cfg.p + cfg.q - (cc.a.to_double() * cfg.x + cc.b.to_double() * cfg.y + cc.k.to_double()));
            const double e_wxy = std::abs(cfg.p * cfg.q - cfg.w * cfg.x * cfg.y);
            if (!inv.ok() || e_w > 1e-10 || e_pq > 1e-10 || e_wxy > 1e-10 * (1 + std::abs(cfg.w * cfg.x * cfg.y)))
                r.fail("float sample " + std::to_string(s) + " violates the residue invariants");
        } catch (const SamplingFailed& e) {
            r.fail(e.what());
        }
    }
    for (std::size_t s = 0; s < samples; ++s) {
        ++r.cases;
        std::array<Rational, 3> l;
        for (auto& v : l) v = random_non_integer(rng);
        Rational m[3][3];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m[i][j] = i == j ? l[static_cast<std::size_t>(i)] : random_rational(rng);
        const Rational e1 = m[0][0] + m[1][1] + m[2][2];
        const Rational e2 = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0] + m[1][1] * m[2][2] -
                            m[1][2] * m[2][1];
        const Rational e3 = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                            m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        const CubicCoeffs cc = cubic_coeffs_symmetric(l, e1, e2, e3);
        const Rational w = m[0][1] * m[1][0], x = m[0][2] * m[2][0], y = m[1][2] * m[2][1];
        const Rational p = m[0][1] * m[1][2] * m[2][0], q = m[2][1] * m[1][0] * m[0][2];
        if (w != cc.c - x - y) r.fail("exact sample " + std::to_string(s) + ": w != c - x - y");
        if (p + q != cc.a * x + cc.b * y + cc.k) r.fail("exact sample " + std::to_string(s) + ": p + q != a x + b y + k");
        if (p * q != w * x * y) r.fail("exact sample " + std::to_string(s) + ": p q != w x y");
    }
    for (std::size_t s = 0; s < samples; ++s) {
        ++r.cases;
        const LambdaMu lm = random_balanced_lm(rng);
        const CubicForm f2 = f_squared_form(lm);
        const NormalCubic n = normalize_cubic(f2);
        if (n.form.shifted(-n.x0, -n.y0) != f2) r.fail("normalize_cubic does not round-trip at sample " + std::to_string(s));
        const Theta th = theta_map(lm, all_perms3()[s % 6]);
        const NormalCubic nh = normalize_cubic(f_hitchin_form(th));
        if (nh.A != n.A || nh.B != n.B || nh.C != n.C || nh.D != n.D)
            r.fail("normal forms of f^2 and the Hitchin cubic differ at sample " + std::to_string(s));
    }
    return r;
}

struct NumericOptions {
    LambdaMu lm{{Rational(1, 2), Rational(1, 2), Rational(1, 2)}, {Rational(3, 14), Rational(5, 14), Rational(13, 14)}};
    std::uint64_t seed = 1;
    cplx t0{0.5, 0.0};
    cplx t1{0.8, 0.0};
    double tol = 1e-10;
    double step = 1e-3;
};

struct NumericReport {
    InvariantReport initial;
    TrajectoryChecks drift;
    ReducedFlowReport reduced;
    std::array<EtaSlotReport, 6> slots;
    Trajectory trajectory;
};

inline NumericReport run_numeric(const NumericOptions& o) {
    NumericReport rep;
    const ResidueConfig raw = sample_residues(o.lm, o.seed, o.t0);
    rep.initial = check_invariants(raw);
    const ResidueConfig cfg = diagonalize_b4(raw);
    rep.trajectory = integrate_schlesinger(cfg, straight_path(o.t0, o.t1), o.tol, o.step);
    rep.drift = check_trajectory(rep.trajectory);
    rep.reduced = reduced_flow_compare(rep.trajectory);
    rep.slots = eta_pvi_residual(rep.trajectory, o.lm);
    return rep;
}

inline CheckResult verify_schlesinger(const NumericReport& rep) {
    CheckResult r{"schlesinger"};
    auto need = [&](bool cond, const std::string& what) {
        ++r.cases;
        if (!cond) r.fail(what);
    };
    need(rep.initial.ok(), "initial residues violate rank/trace/sum/spectrum invariants");
    need(rep.drift.spectral_drift < 1e-8, "spectral drift of B1, B2, B3 exceeds 1e-8");
    need(rep.drift.b4_drift < 1e-12, "B4 drift exceeds 1e-12");
    need(rep.drift.tr_b4_powers_drift < 1e-10, "Tr B4^2 or Tr B4^3 drift exceeds 1e-10");
    need(rep.drift.wxy_drift < 1e-10, "w + x + y drift exceeds 1e-10");
    need(rep.drift.f2_mismatch < 1e-8, "f^2 differs from f_squared(x, y) by more than 1e-8");
    need(rep.reduced.max_deviation < 1e-6, "reduced flow deviates from matrix flow by more than 1e-6");
    return r;
}

inline CheckResult verify_eta_pvi(const NumericReport& rep, double threshold = 1e-3) {
    CheckResult r{"eta-pvi"};
    for (const auto& s : rep.slots) {
        if (s.skipped) continue;
        ++r.cases;
        const std::string slot = "slot " + std::to_string(s.i + 1) + std::to_string(s.j + 1);
        if (s.best() >= threshold) r.fail(slot + ": no permutation satisfies the equation");
        else if (s.count_below(threshold) != 1) r.fail(slot + ": more than one permutation satisfies the equation");
    }
    if (r.cases == 0) r.fail("every slot was degenerate");
    return r;
}

// ---------------------------------------------------------------------------
// Klein group pipeline.

struct OrbitSummary {
    std::vector<std::size_t> members;  // class indices
    std::size_t max_generated_order = 0;
    std::optional<OrbitReport> pure;   // P3 orbit of the first generating member
};

struct KleinReport {
    std::size_t order = 0;
    std::size_t reflections = 0;
    bool all_order_two = false;
    std::size_t triples = 0;
    std::vector<TripleClass> classes;
    std::vector<std::size_t> partition;
    std::vector<OrbitSummary> orbits;
    OrbitReport standard_pure;
    ThetaTableRow theta_row;
};

inline std::vector<OrbitSummary> summarize_orbits(const ReflectionGroup& g, const std::vector<TripleClass>& classes) {
    std::vector<OrbitSummary> out;
    for (auto& members : braid_orbits(classes)) {
        OrbitSummary s;
        s.members = members;
        for (std::size_t i : members) s.max_generated_order = std::max(s.max_generated_order, classes[i].generated_order);
        for (std::size_t i : members)
            if (classes[i].generated_order == g.order) {
                s.pure = orbit(classes[i].representative, BraidGroupKind::pure);
                break;
            }
        out.push_back(std::move(s));
    }
    return out;
}

inline KleinReport reproduce_klein(unsigned jobs = 1) {
    KleinReport k;
    const ReflectionGroup g = build_group(GroupSpec::exceptional(ExceptionalId::G336));
    k.order = g.order;
    k.reflections = g.reflections.size();
    k.all_order_two = std::all_of(g.reflections.begin(), g.reflections.end(),
                                  [](const Mat3& r) { return *is_pseudo_reflection(r) == CycloNum(-1); });
    k.classes = classify_triples(g, g.generators[0], jobs);
    for (const auto& c : k.classes) k.triples += c.multiplicity;
    k.partition = orbit_partition(k.classes);
    k.orbits = summarize_orbits(g, k.classes);
    k.standard_pure = orbit(g.generators, BraidGroupKind::pure);
    k.theta_row = theta_table_row(g.spec);
    return k;
}

}  // namespace crpvi

#include "crpvi/braid.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace crpvi;

namespace {

const std::array<BraidLetter, 4> kLetters{BraidLetter::b1, BraidLetter::b2, BraidLetter::b1_inv, BraidLetter::b2_inv};

Triple commuting() { return {Mat3::diag(-1, 1, 1), Mat3::diag(1, -1, 1), Mat3::diag(1, 1, -1)}; }

Fingerprint order_two(CycloNum w, CycloNum x, CycloNum y, CycloNum p, CycloNum q) {
    return Fingerprint{-1, -1, -1, std::move(w), std::move(x), std::move(y), std::move(p), std::move(q)};
}

}  // namespace

TEST(BraidWord, InverseAndReduction) {
    const BraidWord w{BraidLetter::b1, BraidLetter::b2, BraidLetter::b2_inv, BraidLetter::b1};
    EXPECT_EQ(free_reduce(w), (BraidWord{BraidLetter::b1, BraidLetter::b1}));
    EXPECT_EQ(inverse(BraidWord{BraidLetter::b1, BraidLetter::b2}), (BraidWord{BraidLetter::b2_inv, BraidLetter::b1_inv}));
    BraidWord ww = w;
    const BraidWord inv = inverse(w);
    ww.insert(ww.end(), inv.begin(), inv.end());
    EXPECT_TRUE(free_reduce(ww).empty());
}

TEST(BraidAction, CommutingTripleIsPermuted) {
    const Triple t = commuting();
    const Triple u = braid_act(BraidLetter::b1, t);
    EXPECT_EQ(u[0], t[1]);
    EXPECT_EQ(u[1], t[0]);
    EXPECT_EQ(u[2], t[2]);
    const Triple v = braid_act(BraidLetter::b2, t);
    EXPECT_EQ(v[1], t[2]);
    EXPECT_EQ(v[2], t[1]);
}

TEST(BraidAction, LettersInvertAndSatisfyBraidRelation) {
    const ReflectionGroup g = build_group(GroupSpec::exceptional(ExceptionalId::G336));
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<std::size_t> pick(0, g.reflections.size() - 1);
    for (int n = 0; n < 50; ++n) {
        const Triple t{g.reflections[pick(rng)], g.reflections[pick(rng)], g.reflections[pick(rng)]};
        for (auto l : kLetters) {
            EXPECT_EQ(braid_act(inverse(l), braid_act(l, t)), t);
            const Triple u = braid_act(l, t);
            EXPECT_EQ(u[0] * u[1] * u[2], t[0] * t[1] * t[2]);
        }
        EXPECT_EQ(braid_act(BraidWord{BraidLetter::b1, BraidLetter::b2, BraidLetter::b1}, t),
                  braid_act(BraidWord{BraidLetter::b2, BraidLetter::b1, BraidLetter::b2}, t));
    }
}

// The polynomial action must agree with acting on matrices and re-reading
// the traces, for every order-two triple of a small group.
TEST(BraidAction, QuintupleIntertwinesFingerprint) {
    const ReflectionGroup g = build_group(GroupSpec::imprimitive(2, 1));
    const auto& R = g.reflections;
    for (const auto& a : R)
        for (const auto& b : R)
            for (const auto& c : R) {
                const Triple t{a, b, c};
                const Fingerprint f = fingerprint(t);
                if (!f.all_order_two()) continue;
                for (auto l : kLetters) ASSERT_EQ(fingerprint(braid_act(l, t)), braid_act_quintuple(l, f));
            }
}

TEST(BraidAction, QuintupleLettersInvert) {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<long> d(-6, 6);
    for (int n = 0; n < 100; ++n) {
        const Fingerprint f = order_two(d(rng), d(rng), d(rng), d(rng), d(rng));
        for (auto l : kLetters) EXPECT_EQ(braid_act_quintuple(inverse(l), braid_act_quintuple(l, f)), f);
    }
}

TEST(BraidAction, FixedPoint) {
    const Fingerprint f = order_two(4, 4, 4, -8, -8);
    for (auto l : kLetters) EXPECT_EQ(braid_act_quintuple(l, f), f);
}

TEST(BraidAction, QuintupleNeedsOrderTwo) {
    const Mat3 r = Mat3::diag(root_of_unity(3, 1), 1, 1);
    const Fingerprint f = fingerprint({r, r, r});
    EXPECT_THROW(braid_act_quintuple(BraidLetter::b1, f), UnsupportedCase);
    EXPECT_THROW(orbit(f, BraidGroupKind::full), UnsupportedCase);
    // Acting on the matrices still works.
    const OrbitReport rep = orbit(Triple{r, r, r}, BraidGroupKind::full);
    EXPECT_FALSE(rep.quintuple_level);
    EXPECT_EQ(rep.branches(), 1u);
}

TEST(CycleType, Examples) {
    EXPECT_EQ(cycle_type({0, 1, 2}), (Partition{1, 1, 1}));
    EXPECT_EQ(cycle_type({1, 2, 0, 4, 3, 5, 6}), (Partition{3, 2, 1, 1}));
    EXPECT_TRUE(cycle_type({}).empty());
}

TEST(CoverGenus, Examples) {
    EXPECT_EQ(cover_genus(7, {Partition{3, 2, 2}, Partition{3, 2, 2}, Partition{3, 2, 2}}), 0);
    EXPECT_EQ(cover_genus(1, {Partition{1}, Partition{1}, Partition{1}}), 0);
    EXPECT_EQ(cover_genus(3, {Partition{3}, Partition{3}, Partition{3}}), 1);
    EXPECT_EQ(cover_genus(2, {Partition{2}, Partition{2}, Partition{1, 1}}), 0);
    EXPECT_THROW(cover_genus(3, {Partition{2}, Partition{3}, Partition{3}}), std::invalid_argument);
    EXPECT_THROW(cover_genus(0, {Partition{}, Partition{}, Partition{}}), std::invalid_argument);
    EXPECT_THROW(cover_genus(2, {Partition{2}, Partition{1, 1}, Partition{1, 1}}), std::domain_error);
}

TEST(Orbit, CommutingTripleIsFixed) {
    const OrbitReport rep = orbit(commuting(), BraidGroupKind::full);
    EXPECT_TRUE(rep.quintuple_level);
    EXPECT_EQ(rep.branches(), 1u);
    EXPECT_TRUE(rep.pure_transitive);
    EXPECT_EQ(*rep.genus, 0);
}

TEST(Orbit, KleinStandardTriple) {
    const ReflectionGroup g = build_group(GroupSpec::exceptional(ExceptionalId::G336));
    const OrbitReport pure = orbit(g.generators, BraidGroupKind::pure);
    EXPECT_EQ(pure.branches(), 7u);
    for (const auto& ct : pure.cycle_types) EXPECT_EQ(ct, (Partition{3, 2, 2}));
    EXPECT_TRUE(pure.pure_transitive);
    EXPECT_EQ(*pure.genus, 0);
    const OrbitReport full = orbit(g.generators, BraidGroupKind::full);
    EXPECT_EQ(full.branches(), 7u);
    // Matrix-level and fingerprint-level orbits agree.
    const OrbitReport fp = orbit(fingerprint(g.generators), BraidGroupKind::pure);
    EXPECT_EQ(fp.orbit, pure.orbit);
    EXPECT_EQ(fp.cycle_types, pure.cycle_types);
}

TEST(Orbit, PermutationsAreConsistent) {
    const ReflectionGroup g = build_group(GroupSpec::exceptional(ExceptionalId::G336));
    const OrbitReport rep = orbit(g.generators, BraidGroupKind::pure);
    const std::size_t n = rep.branches();
    for (std::size_t i = 0; i < n; ++i) {
        const Fingerprint& f = rep.orbit[i];
        const auto sq = [&](BraidLetter l) { return braid_act_quintuple(l, braid_act_quintuple(l, f)); };
        EXPECT_EQ(rep.orbit[rep.sigma1[i]], sq(BraidLetter::b1));
        EXPECT_EQ(rep.orbit[rep.sigma2[i]], sq(BraidLetter::b2));
        EXPECT_EQ(rep.sigma_prod[i], rep.sigma2[rep.sigma1[i]]);
    }
}

TEST(Orbit, DivergesPastBound) {
    EXPECT_THROW(orbit(order_two(5, 5, 5, 0, 0), BraidGroupKind::full, 50), OrbitDiverged);
}

TEST(Orbit, KleinPartition) {
    const ReflectionGroup g = build_group(GroupSpec::exceptional(ExceptionalId::G336));
    const auto classes = classify_triples(g, g.generators[0]);
    EXPECT_EQ(orbit_partition(classes), (std::vector<std::size_t>{1, 1, 3, 3, 4, 4, 6, 7, 7, 9}));
    std::vector<TripleClass> partial(classes.begin(), classes.begin() + 10);
    EXPECT_THROW(braid_orbits(partial), std::domain_error);
}

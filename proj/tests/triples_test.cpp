#include "crpvi/triples.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace crpvi;

TEST(Fingerprint, CommutingTripleHasZeroInvariants) {
    const Fingerprint f = fingerprint({Mat3::diag(-1, 1, 1), Mat3::diag(1, -1, 1), Mat3::diag(1, 1, -1)});
    EXPECT_TRUE(f.all_order_two());
    for (const auto& v : f.quintuple()) EXPECT_TRUE(v.is_zero());
}

TEST(Fingerprint, RepeatedReflection) {
    const Mat3 r = Mat3::diag(-1, 1, 1);
    const Fingerprint f = fingerprint({r, r, r});
    EXPECT_EQ(f.quintuple(), (std::array<CycloNum, 5>{4, 4, 4, -8, -8}));
}

TEST(Fingerprint, HigherOrderReflections) {
    const CycloNum z = root_of_unity(3, 1);
    const Mat3 r = Mat3::diag(z, 1, 1);
    const Fingerprint f = fingerprint({r, r, r});
    EXPECT_FALSE(f.all_order_two());
    EXPECT_EQ(f.t1, z);
    // With u = t - 1: w = x = y = u^2 and p = q = u^3.
    const CycloNum u = z - CycloNum(1);
    EXPECT_EQ(f.w, u * u);
    EXPECT_EQ(f.p, u * u * u);
    EXPECT_EQ(f.p * f.q, f.w * f.x * f.y);
}

TEST(Fingerprint, RejectsNonReflections) {
    EXPECT_THROW(fingerprint({Mat3::identity(), Mat3::diag(-1, 1, 1), Mat3::diag(-1, 1, 1)}), std::invalid_argument);
}

TEST(Fingerprint, ConjugationInvariantAndProductIdentity) {
    const ReflectionGroup g = build_group(GroupSpec::exceptional(ExceptionalId::G336));
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::size_t> pr(0, g.reflections.size() - 1), pe(0, g.order - 1);
    Mat3 h = Mat3::identity();
    h(0, 2) = 3;
    h(1, 0) = root_of_unity(7, 2);
    const Mat3 hi = h.inverse();
    for (int n = 0; n < 60; ++n) {
        const Triple t{g.reflections[pr(rng)], g.reflections[pr(rng)], g.reflections[pr(rng)]};
        const Fingerprint f = fingerprint(t);
        EXPECT_EQ(f.p * f.q, f.w * f.x * f.y);
        const Mat3& e = g.elements[pe(rng)];
        const Mat3 ei = e.inverse();
        EXPECT_EQ(fingerprint({e * t[0] * ei, e * t[1] * ei, e * t[2] * ei}), f);
        EXPECT_EQ(fingerprint({h * t[0] * hi, h * t[1] * hi, h * t[2] * hi}), f);
    }
}

TEST(Fingerprint, RoundTripThroughNormalForm) {
    const CycloNum m1(-1);
    const CycloNum p = root_of_unity(7, 1) + root_of_unity(7, 2) + root_of_unity(7, 4);
    const Fingerprint f = fingerprint(triple_from_invariants({m1, m1, m1}, 1, 2, 1, p, p.conj()));
    EXPECT_EQ(f.w, CycloNum(1));
    EXPECT_EQ(f.x, CycloNum(2));
    EXPECT_EQ(f.y, CycloNum(1));
    EXPECT_EQ(f.p, p);
    EXPECT_EQ(f.q, p.conj());
}

TEST(ClassifyTriples, MultiplicitiesCoverAllTriples) {
    const ReflectionGroup g = build_group(GroupSpec::imprimitive(2, 1));
    const auto all = classify_triples(g);
    const std::size_t n = g.reflections.size();
    std::size_t total = 0;
    for (const auto& c : all) {
        total += c.multiplicity;
        EXPECT_EQ(fingerprint(c.representative), c.fingerprint);
        EXPECT_LE(c.generated_order, g.order);
        EXPECT_EQ(g.order % c.generated_order, 0u);
    }
    EXPECT_EQ(total, n * n * n);
    const auto fixed = classify_triples(g, g.reflections[0]);
    total = 0;
    for (const auto& c : fixed) {
        total += c.multiplicity;
        EXPECT_EQ(c.representative[0], g.reflections[0]);
    }
    EXPECT_EQ(total, n * n);
}

TEST(ClassifyTriples, IndependentOfJobCount) {
    const ReflectionGroup g = build_group(GroupSpec::exceptional(ExceptionalId::G336));
    const auto one = classify_triples(g, g.generators[0], 1);
    const auto three = classify_triples(g, g.generators[0], 3);
    ASSERT_EQ(one.size(), three.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        EXPECT_EQ(one[i].fingerprint, three[i].fingerprint);
        EXPECT_EQ(one[i].multiplicity, three[i].multiplicity);
        EXPECT_EQ(one[i].representative, three[i].representative);
    }
    EXPECT_EQ(one.size(), 45u);
}

TEST(ClassifyTriples, RejectsForeignFirstReflection) {
    const ReflectionGroup g = build_group(GroupSpec::imprimitive(2, 2));
    EXPECT_THROW(classify_triples(g, Mat3::diag(-1, 1, 1)), std::invalid_argument);
}

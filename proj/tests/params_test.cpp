#include "crpvi/checks.hpp"
#include "crpvi/params.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace crpvi;

namespace {

Rational R(long a, long b = 1) { return Rational(a, b); }

Theta frac(long a, long b, long c, long d, long n) { return Theta{{R(a, n), R(b, n), R(c, n), R(d, n)}}; }

LambdaMu klein_lm() { return {{R(1, 2), R(1, 2), R(1, 2)}, {R(3, 14), R(5, 14), R(13, 14)}}; }

bool contains(const std::vector<Theta>& v, const Theta& t) { return std::find(v.begin(), v.end(), t) != v.end(); }

}  // namespace

TEST(LambdaMu, FromKleinTriple) {
    const ReflectionGroup g = build_group(GroupSpec::exceptional(ExceptionalId::G336));
    const LambdaMu lm = lambda_mu_of_triple(g.generators);
    EXPECT_EQ(lm, klein_lm());
    EXPECT_EQ(lm.sum_discrepancy(), R(0));
}

TEST(LambdaMu, FromCommutingTriple) {
    const LambdaMu lm = lambda_mu_of_triple({Mat3::diag(-1, 1, 1), Mat3::diag(1, -1, 1), Mat3::diag(1, 1, -1)});
    EXPECT_EQ(lm.lambda, (std::array<Rational, 3>{R(1, 2), R(1, 2), R(1, 2)}));
    EXPECT_EQ(lm.mu, (std::array<Rational, 3>{R(1, 2), R(1, 2), R(1, 2)}));
}

TEST(LambdaMu, FromG648) {
    const LambdaMu lm = lambda_mu_of_triple(standard_generators(GroupSpec::exceptional(ExceptionalId::G648)));
    for (const auto& l : lm.lambda) EXPECT_TRUE(l == R(1, 3) || l == R(2, 3));
    EXPECT_EQ(lm.mu, (std::array<Rational, 3>{R(5, 12), R(8, 12), R(11, 12)}));
}

TEST(LambdaMu, RejectsInfiniteOrderProduct) {
    Mat3 a = Mat3::identity();
    a(0, 0) = -1;
    a(0, 1) = 3;
    EXPECT_THROW(lambda_mu_of_triple({a, Mat3::diag(1, -1, 1), Mat3::diag(1, 1, -1)}, 200), std::domain_error);
    EXPECT_THROW(lambda_mu_of_triple({Mat3::identity(), a, a}), std::invalid_argument);
}

TEST(MuFromDegrees, Examples) {
    EXPECT_EQ(mu_from_degrees({4, 6, 14}), (std::array<Rational, 3>{R(3, 14), R(5, 14), R(13, 14)}));
    EXPECT_EQ(mu_from_degrees({2, 6, 10}), (std::array<Rational, 3>{R(1, 10), R(1, 2), R(9, 10)}));
    for (int m = 3; m <= 8; ++m)
        EXPECT_EQ(mu_from_degrees({3, m, 2 * m}), (std::array<Rational, 3>{R(2, 2 * m), R(m - 1, 2 * m), R(2 * m - 1, 2 * m)}));
}

// mu from degrees agrees with mu extracted from the standard generators.
TEST(MuFromDegrees, MatchesCoxeterSpectrum) {
    for (auto id : {ExceptionalId::icosahedral, ExceptionalId::G336, ExceptionalId::G2160}) {
        const GroupSpec s = GroupSpec::exceptional(id);
        EXPECT_EQ(lambda_mu_of_triple(standard_generators(s)).mu, mu_from_degrees(s.degrees())) << s.name();
    }
}

TEST(ThetaMap, Examples) {
    EXPECT_EQ(theta_map(klein_lm(), {0, 1, 2}), frac(2, 2, 2, -4, 7));
    EXPECT_EQ(theta_map(klein_lm(), {0, 1, 2}).abs().str(), "(2,2,2,4)/7");
    const LambdaMu g648{{R(2, 3), R(2, 3), R(2, 3)}, {R(8, 12), R(5, 12), R(11, 12)}};
    EXPECT_EQ(theta_map(g648, {0, 1, 2}), frac(0, 0, 0, -1, 2));
    EXPECT_EQ(canonical_theta(g648), frac(0, 0, 0, 1, 2));
    const LambdaMu ico{{R(1, 2), R(1, 2), R(1, 2)}, {R(1, 2), R(1, 10), R(9, 10)}};
    EXPECT_EQ(canonical_theta(ico), frac(0, 0, 0, 4, 5));
}

TEST(ThetaMap, CandidatesIndependentOfMuOrder) {
    std::mt19937_64 rng(12);
    for (int n = 0; n < 30; ++n) {
        LambdaMu lm = random_balanced_lm(rng);
        const auto base = theta_candidates(lm);
        std::swap(lm.mu[0], lm.mu[2]);
        EXPECT_EQ(theta_candidates(lm), base);
        std::swap(lm.mu[1], lm.mu[2]);
        EXPECT_EQ(canonical_theta(lm), base.front());
    }
}

TEST(ThetaMap, BalancedLifts) {
    const LambdaMu lm{{R(1, 2), R(1, 2), R(1, 2)}, {R(1, 2), R(1, 2), R(3, 2)}};
    for (const auto& l : balanced_lifts(lm)) EXPECT_TRUE(l.balanced());
    EXPECT_EQ(balanced_lifts(lm).size(), 6u);
    const LambdaMu bad{{R(1, 3), R(1, 2), R(1, 2)}, {R(1, 2), R(1, 2), R(1, 2)}};
    EXPECT_THROW(balanced_lifts(bad), std::domain_error);
}

TEST(Theta, Formatting) {
    EXPECT_EQ(frac(1, 1, 2, 12, 18).str(), "(1,1,2,12)/18");
    EXPECT_EQ(frac(0, 0, 0, 2, 2).str(), "(0,0,0,1)");
    EXPECT_EQ(frac(0, 0, 0, 0, 1).str(), "(0,0,0,0)");
}

TEST(PviAbcd, Examples) {
    EXPECT_EQ(pvi_abcd(frac(0, 0, 0, 1, 1)), (PviParams{R(0), R(0), R(0), R(1, 2)}));
    EXPECT_EQ(pvi_abcd(frac(2, 2, 2, 4, 7)), (PviParams{R(9, 98), R(-2, 49), R(2, 49), R(45, 98)}));
    EXPECT_EQ(pvi_abcd(frac(0, 0, 0, 0, 1)), (PviParams{R(1, 2), R(0), R(0), R(1, 2)}));
}

TEST(ThetaTable, FamilyRows) {
    for (int m : {3, 4, 5, 6}) {
        const auto mm = theta_table_row(GroupSpec::imprimitive(m, m));
        EXPECT_TRUE(mm.matches) << mm.message;
        const auto m1 = theta_table_row(GroupSpec::imprimitive(m, 1));
        EXPECT_TRUE(m1.matches) << m1.message;
    }
    EXPECT_EQ(tabulated_theta(GroupSpec::imprimitive(3, 3))->str(), "(1,1,1,3)/6");
    EXPECT_EQ(tabulated_theta(GroupSpec::imprimitive(3, 1))->str(), "(1,1,2,12)/18");
}

TEST(ThetaTable, ExceptionalRows) {
    for (auto id : {ExceptionalId::icosahedral, ExceptionalId::G336, ExceptionalId::G648, ExceptionalId::G2160}) {
        const auto row = theta_table_row(GroupSpec::exceptional(id));
        EXPECT_TRUE(row.matches) << row.spec.name() << ": " << row.message;
    }
    EXPECT_EQ(tabulated_theta(GroupSpec::exceptional(ExceptionalId::G2160))->str(), "(5,5,5,9)/15");
}

// The G1296 standard triple yields these tuples; the tabulated (4,7,7,12)/18
// is not among them and the row is reported as a mismatch.
TEST(ThetaTable, G1296Candidates) {
    const auto row = theta_table_row(GroupSpec::exceptional(ExceptionalId::G1296));
    EXPECT_EQ(row.lm.mu, mu_from_degrees(row.degrees));
    EXPECT_TRUE(contains(row.candidates, frac(4, 7, 7, 6, 18)));
    EXPECT_TRUE(contains(row.candidates, frac(2, 1, 1, 12, 18)));
    EXPECT_FALSE(row.matches);
    EXPECT_NE(row.message.find("(4,7,7,12)/18"), std::string::npos);
}

TEST(ThetaTable, DefaultSpecs) {
    const auto specs = theta_table_specs();
    EXPECT_EQ(specs.size(), 13u);
    EXPECT_EQ(specs.front(), GroupSpec::imprimitive(3, 3));
    EXPECT_EQ(specs.back(), GroupSpec::exceptional(ExceptionalId::G2160));
}

TEST(Poly2, Arithmetic) {
    const Poly2 x = Poly2::x(), y = Poly2::y();
    const Poly2 p = (x + y) * (x - y);
    EXPECT_EQ(p, x * x - y * y);
    EXPECT_EQ(p.degree(), 2);
    EXPECT_EQ(p(R(3), R(1)), R(8));
    EXPECT_EQ(p.shifted(R(1), R(0))(R(2), R(1)), p(R(3), R(1)));
    EXPECT_EQ((x + Poly2(R(1))).pow(3).coeff(1, 0), R(3));
}

TEST(CubicCoeffs, Examples) {
    const LambdaMu half{{R(1, 2), R(1, 2), R(1, 2)}, {R(1, 2), R(1, 2), R(1, 2)}};
    EXPECT_EQ(cubic_coeffs(half), (CubicCoeffs{R(0), R(0), R(0), R(0)}));
    const LambdaMu q{{R(1, 2), R(1, 2), R(1, 2)}, {R(1, 4), R(1, 2), R(3, 4)}};
    EXPECT_EQ(cubic_coeffs(q), (CubicCoeffs{R(0), R(0), R(0), R(1, 16)}));
    const LambdaMu bad{{R(1, 2), R(1, 2), R(1, 2)}, {R(1, 4), R(1, 4), R(1, 4)}};
    EXPECT_THROW(cubic_coeffs(bad), std::domain_error);
}

// Oracle: expand Tr(M^2) and det(M) for a rational M with diagonal lambda.
TEST(CubicCoeffs, ExactRandomMatrices) {
    const CheckResult r = verify_cubic(40, 123);
    EXPECT_TRUE(r.ok) << r.detail;
    EXPECT_EQ(r.cases, 120u);
}

TEST(FSquared, Examples) {
    const LambdaMu lm = klein_lm();
    EXPECT_EQ(f_squared(R(0), R(0), lm), cubic_coeffs(lm).k * cubic_coeffs(lm).k);
    EXPECT_EQ(f_hitchin_squared(R(0), R(0), frac(0, 0, 0, 1, 1)), R(0));
    EXPECT_EQ(f_squared_form(lm)(R(2, 3), R(-5)), f_squared(R(2, 3), R(-5), lm));
}

TEST(FSquared, ShiftedHitchinIdentity) {
    const CheckResult r = verify_lemma_params(100, 20261014);
    EXPECT_TRUE(r.ok) << r.detail;
    EXPECT_EQ(r.cases, 600u);
}

TEST(NormalizeCubic, AlreadyNormal) {
    const Poly2 x = Poly2::x(), y = Poly2::y();
    const Poly2 f = Poly2(R(4)) * x * x * y + Poly2(R(4)) * x * y * y + Poly2(R(2)) * x * y + Poly2(R(3)) * x + Poly2(R(-1));
    const NormalCubic n = normalize_cubic(f);
    EXPECT_EQ(n.x0, R(0));
    EXPECT_EQ(n.y0, R(0));
    EXPECT_EQ(n.A, R(2));
    EXPECT_EQ(n.B, R(3));
    EXPECT_EQ(n.C, R(0));
    EXPECT_EQ(n.D, R(-1));
}

TEST(NormalizeCubic, KillsSquareTerms) {
    const Poly2 x = Poly2::x(), y = Poly2::y();
    const Poly2 f = Poly2(R(4)) * x * x * y + Poly2(R(4)) * x * y * y + Poly2(R(4)) * x * x;
    const NormalCubic n = normalize_cubic(f);
    EXPECT_EQ(n.x0, R(0));
    EXPECT_EQ(n.y0, R(-1));
    EXPECT_EQ(n.form.coeff(2, 0), R(0));
    EXPECT_EQ(n.form.coeff(0, 2), R(0));
    EXPECT_EQ(n.form.shifted(-n.x0, -n.y0), f);
    EXPECT_EQ(n.A, R(-8));
    EXPECT_EQ(n.B, R(4));
}

TEST(NormalizeCubic, RejectsWrongLeadingPart) {
    const Poly2 x = Poly2::x(), y = Poly2::y();
    EXPECT_THROW(normalize_cubic(x * x * y + x * y * y), std::invalid_argument);
    EXPECT_THROW(normalize_cubic(Poly2(R(4)) * x * x * y + Poly2(R(4)) * x * y * y + x * x * x), std::invalid_argument);
    EXPECT_THROW(normalize_cubic(x * x), std::invalid_argument);
}

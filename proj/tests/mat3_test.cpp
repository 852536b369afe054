#include "crpvi/mat3.hpp"

#include <gtest/gtest.h>

using namespace crpvi;

namespace {

Spectrum spec(long a, long b, long c, long n) { return Spectrum{{Rational(a, n), Rational(b, n), Rational(c, n)}}; }

}  // namespace

TEST(Mat3, DeterminantAndInverse) {
    const Mat3 d = Mat3::diag(2, 3, 5);
    EXPECT_EQ(d.det(), CycloNum(30));
    EXPECT_EQ(d * d.inverse(), Mat3::identity());
    EXPECT_EQ(Mat3::permutation({1, 0, 2}).det(), CycloNum(-1));
    EXPECT_EQ(Mat3::permutation({1, 2, 0}).det(), CycloNum(1));
    EXPECT_THROW(Mat3().inverse(), std::domain_error);
}

TEST(Mat3, PermutationMapsBasisVectors) {
    const Mat3 p = Mat3::permutation({2, 0, 1});
    EXPECT_EQ(p(2, 0), CycloNum(1));
    EXPECT_EQ(p(0, 1), CycloNum(1));
    EXPECT_EQ(p(1, 2), CycloNum(1));
    EXPECT_EQ(p.pow(3), Mat3::identity());
}

TEST(Mat3, CyclotomicEntries) {
    const CycloNum z = root_of_unity(7, 1);
    Mat3 m = Mat3::diag(z, z.pow(2), z.pow(4));
    EXPECT_EQ(m.det(), CycloNum(1));
    EXPECT_EQ(m.pow(7), Mat3::identity());
    EXPECT_EQ(m * m.inverse(), Mat3::identity());
    EXPECT_EQ(m.rank(), 3);
    EXPECT_EQ((m - m).rank(), 0);
}

TEST(Mat3, PseudoReflections) {
    EXPECT_EQ(*is_pseudo_reflection(Mat3::diag(-1, 1, 1)), CycloNum(-1));
    EXPECT_EQ(*is_pseudo_reflection(Mat3::diag(1, root_of_unity(3, 1), 1)), root_of_unity(3, 1));
    EXPECT_EQ(*is_pseudo_reflection(Mat3::permutation({0, 2, 1})), CycloNum(-1));
    EXPECT_FALSE(is_pseudo_reflection(Mat3::identity()));
    EXPECT_FALSE(is_pseudo_reflection(Mat3::diag(-1, -1, 1)));
    EXPECT_FALSE(is_pseudo_reflection(Mat3::diag(0, 1, 1)));
    EXPECT_FALSE(is_pseudo_reflection(Mat3::permutation({1, 2, 0})));
    // Transvection: rank(M - I) = 1 but det = 1 is still accepted as t = 1.
    Mat3 tr = Mat3::identity();
    tr(0, 1) = 1;
    EXPECT_EQ(*is_pseudo_reflection(tr), CycloNum(1));
}

TEST(Mat3, ElementOrder) {
    EXPECT_EQ(*element_order(Mat3::identity(), 5), 1);
    EXPECT_EQ(*element_order(Mat3::permutation({1, 2, 0}), 5), 3);
    EXPECT_EQ(*element_order(Mat3::diag(root_of_unity(4, 1), -1, 1), 10), 4);
    Mat3 tr = Mat3::identity();
    tr(0, 1) = 1;
    EXPECT_FALSE(element_order(tr, 50).has_value());
}

TEST(Mat3, FiniteOrderSpectrum) {
    EXPECT_EQ(finite_order_spectrum(Mat3::diag(-1, 1, 1), 2), spec(0, 0, 1, 2));
    EXPECT_EQ(finite_order_spectrum(Mat3::permutation({1, 2, 0}), 3), spec(0, 1, 2, 3));
    EXPECT_EQ(finite_order_spectrum(Mat3::identity(), 1), spec(0, 0, 0, 1));
    const CycloNum z = root_of_unity(14, 1);
    const Mat3 cox = Mat3::diag(z.pow(3), z.pow(5), z.pow(13));
    EXPECT_EQ(finite_order_spectrum(cox, 14), spec(3, 5, 13, 14));
    EXPECT_THROW(finite_order_spectrum(Mat3::diag(-1, 1, 1), 3), std::domain_error);
    EXPECT_THROW(finite_order_spectrum(Mat3::identity(), 0), std::invalid_argument);
}

TEST(Mat3, SpectrumIsConjugationInvariant) {
    const CycloNum z = root_of_unity(14, 1);
    const Mat3 cox = Mat3::diag(z.pow(3), z.pow(5), z.pow(13));
    Mat3 g = Mat3::identity();
    g(0, 1) = 2;
    g(2, 0) = CycloNum(-1) + root_of_unity(7, 3);
    g(1, 2) = Rational(1, 3);
    const Mat3 c = g * cox * g.inverse();
    EXPECT_EQ(finite_order_spectrum(c, 14), spec(3, 5, 13, 14));
    EXPECT_EQ(c.char_poly(), cox.char_poly());
}

TEST(Mat3, KeysIgnoreRepresentation) {
    const Mat3 a = Mat3::diag(root_of_unity(3, 1), 1, 1);
    EXPECT_EQ(a.lifted(12).key(), a.key());
    EXPECT_EQ(a.lifted(12), a);
}

#include <gtest/gtest.h>

#include "crjet/linalg.hpp"

using namespace crjet;

namespace {

RationalMatrix M(int rows, int cols, std::initializer_list<long> values) {
    RationalMatrix m(rows, cols);
    auto it = values.begin();
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = Rational(*it++);
    return m;
}

}  // namespace

TEST(Linalg, RankAndKernel) {
    const auto a = M(3, 3, {1, 2, 3, 2, 4, 6, 1, 0, 1});
    EXPECT_EQ(rank(a), 2);
    const auto k = kernel_basis(a);
    ASSERT_EQ(k.cols(), 1);
    EXPECT_TRUE((a * k).isZero());
    EXPECT_EQ(image_basis(a).cols(), 2);
}

TEST(Linalg, InverseAndSolve) {
    const auto a = M(2, 2, {2, 1, 1, 1});
    EXPECT_EQ(a * inverse(a), identity_matrix(2));
    EXPECT_THROW(inverse(M(2, 2, {1, 2, 2, 4})), std::domain_error);
    RationalVector b(2);
    b << Rational(3), Rational(2);
    const auto x = solve_any(a, b);
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(a * *x, b);
    RationalVector c(2);
    c << Rational(1), Rational(1);
    EXPECT_FALSE(solve_any(M(2, 2, {1, 1, 1, 1}), RationalVector(M(2, 1, {1, 2}).col(0))).has_value());
    (void)c;
}

TEST(Linalg, CharacteristicPolynomial) {
    // [[2, 1], [0, 3]]: t^2 - 5t + 6.
    const auto c = characteristic_polynomial(M(2, 2, {2, 1, 0, 3}));
    ASSERT_EQ(c.size(), 3u);
    EXPECT_EQ(c[0], Rational(6));
    EXPECT_EQ(c[1], Rational(-5));
    EXPECT_EQ(c[2], Rational(1));
    EXPECT_EQ(evaluate_polynomial(c, Rational(2)), Rational(0));
    EXPECT_EQ(evaluate_polynomial(c, Rational(4)), Rational(2));
    const auto c3 = characteristic_polynomial(M(3, 3, {1, 2, 0, 0, 1, 0, 4, 0, -2}));
    EXPECT_EQ(evaluate_polynomial(c3, Rational(1)), Rational(0));
    EXPECT_EQ(evaluate_polynomial(c3, Rational(-2)), Rational(0));
}

TEST(Linalg, IntersectionDimension) {
    const auto u = M(3, 2, {1, 0, 0, 1, 0, 0});
    const auto v = M(3, 2, {1, 0, 1, 0, 0, 1});
    EXPECT_EQ(intersection_dimension(u, v), 1);
    EXPECT_EQ(intersection_dimension(u, u), 2);
}

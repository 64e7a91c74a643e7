#include <random>

#include <gtest/gtest.h>

#include "crjet/dsl.hpp"
#include "crjet/series_io.hpp"
#include "crjet/series_ops.hpp"

using namespace crjet;

namespace {

TruncatedSeries S(const std::string& text, const Variables& vars, int order) {
    return parse_series(text, vars, order);
}

const Variables kU{"u"};
const Variables kZX{"z", "x"};
const Variables kZXT{"z", "x", "t"};

TruncatedSeries random_series(std::mt19937& rng, const Variables& vars, int order, int terms) {
    std::uniform_int_distribution<int> coeff(-9, 9);
    std::uniform_int_distribution<int> expo(0, order);
    TruncatedSeries s(vars, order);
    for (int k = 0; k < terms; ++k) {
        MultiIndex m(static_cast<int>(vars.size()));
        for (int v = 0; v < static_cast<int>(vars.size()); ++v) m.set(v, expo(rng) / static_cast<int>(vars.size()));
        s.add_to(m, ComplexRational(Rational(coeff(rng), 1 + std::abs(coeff(rng))), Rational(coeff(rng))));
    }
    return s;
}

}  // namespace

TEST(Series, AddExamples) {
    EXPECT_EQ(to_dsl(S("t", kZXT, 4) + S("2*i*z*x", kZXT, 4)), "t + 2*i*z*x");
    const auto a = S("1 + 3*z*x - i*t^2", kZXT, 5);
    EXPECT_TRUE((a + (-a)).is_zero());
    EXPECT_EQ(to_dsl(S("1 + z", kZX, 3) + S("1 - z", kZX, 3)), "2");
}

TEST(Series, AddTakesMinimumOrder) {
    const auto s = S("z", kZX, 3) + S("x", kZX, 5);
    EXPECT_EQ(s.order(), 3);
}

TEST(Series, VariableMismatchThrows) {
    EXPECT_THROW(S("z", kZX, 3) + S("t", kZXT, 3), SeriesError);
}

TEST(Series, MultiplyExamples) {
    EXPECT_EQ(S("1 + u", kU, 4) * S("1 - u", kU, 4), S("1 - u^2", kU, 4));
    EXPECT_EQ(to_dsl(S("z", kZX, 4) * S("x", kZX, 4)), "z*x");
}

TEST(Series, DivideExamples) {
    EXPECT_EQ(divide(S("1 + u", kU, 3), S("1 - u", kU, 3)), S("1 + 2*u + 2*u^2 + 2*u^3", kU, 3));
    const auto a = S("3 - i*u^2", kU, 5);
    EXPECT_EQ(divide(a, S("1", kU, 5)), a);
    const auto q = divide(S("z*x + z^2*x^2", kZX, 8), S("z*x", kZX, 8));
    EXPECT_EQ(to_dsl(q), "1 + z*x");
    EXPECT_EQ(q.order(), 6);
}

TEST(Series, DivideErrors) {
    try {
        divide(S("u", kU, 4), S("u^2", kU, 4));
        FAIL();
    } catch (const SeriesError& e) {
        EXPECT_EQ(e.code(), SeriesErrc::DivisorOrderExceedsDividend);
    }
    try {
        divide(S("z*x", kZX, 4), S("z + x", kZX, 4));
        FAIL();
    } catch (const SeriesError& e) {
        EXPECT_EQ(e.code(), SeriesErrc::NonmonomialLeadingForm);
    }
}

TEST(Series, PartialDerivative) {
    EXPECT_EQ(to_dsl(partial_derivative(S("t + 2*i*z^2*x^2", kZXT, 8), "z")), "4*i*z*x^2");
    EXPECT_EQ(to_dsl(partial_derivative(S("t", kZXT, 8), "t")), "1");
    const auto d = partial_derivative(S("t + 2*i*z^2*x^2", kZXT, 8), "z", 3);
    EXPECT_EQ(d.order(), 5);
    EXPECT_THROW(partial_derivative(S("t", kZXT, 3), "w"), SeriesError);
}

TEST(Series, ComposeExamples) {
    const auto q = S("4*i*x^2", Variables{"x"}, 6);
    const auto lx = S("3/2*x", Variables{"x"}, 6);
    EXPECT_EQ(to_dsl(compose(q, {lx})), "9*i*x^2");
    const auto f = S("1 + z*x - 2*z^3", kZX, 5);
    EXPECT_EQ(compose(f, {TruncatedSeries::variable(kZX, 5, "z"), TruncatedSeries::variable(kZX, 5, "x")}), f);
    EXPECT_EQ(to_dsl(compose(S("u^2", kU, 2), {S("z + x", kZX, 2)})), "z^2 + 2*z*x + x^2");
    EXPECT_THROW(compose(S("u^2", kU, 2), {S("1 + z", kZX, 2)}), SeriesError);
}

TEST(Series, Conjugate) {
    EXPECT_EQ(to_dsl(conjugate_series(S("2*i*z*x", kZX, 4))), "-2*i*z*x");
    const auto a = S("(1/2 + 3*i)*z - i*x^2 + 7", kZX, 4);
    EXPECT_EQ(conjugate_series(conjugate_series(a)), a);
    const auto r = S("3*z - 1/5*x^2", kZX, 4);
    EXPECT_EQ(conjugate_series(r), r);
}

TEST(Series, VanishingOrder) {
    EXPECT_EQ(vanishing_order(S("4*i*x^2", Variables{"x"}, 8), std::string("x")).value, 2);
    EXPECT_EQ(vanishing_order(S("1 + z", kZX, 8)).value, 0);
    const auto v = vanishing_order(TruncatedSeries(kZX, 8));
    EXPECT_FALSE(v.known());
    EXPECT_EQ(v.lower_bound, 9);
}

TEST(Series, KthRootFloat) {
    const FloatSeries a = to_float(S("1 + 2*u", kU, 6));
    const FloatSeries r = kth_root(a, 2);
    const FloatSeries expected = to_float(S("1 + u - 1/2*u^2 + 1/2*u^3 - 5/8*u^4 + 7/8*u^5 - 21/16*u^6", kU, 6));
    EXPECT_LT(max_coefficient_distance(r, expected), 1e-12);

    const FloatSeries b = to_float(S("4*i*x^2", Variables{"x"}, 8));
    const FloatSeries rb = kth_root(b, 2);
    const Complex c = rb.coefficient(MultiIndex{1});
    EXPECT_NEAR(c.real(), std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(c.imag(), std::sqrt(2.0), 1e-12);
    EXPECT_EQ(rb.size(), 1u);
}

TEST(Series, KthRootRoundTrip) {
    const auto a = S("1 + 2*u - i*u^3 + 1/3*u^4", kU, 8);
    EXPECT_EQ(kth_root(pow(a, 3), 3), a);
    EXPECT_THROW(kth_root(S("u", kU, 4), 2), SeriesError);
    EXPECT_THROW(kth_root(TruncatedSeries(kU, 4), 2), SeriesError);
}

TEST(Series, Reversion) {
    const auto a = S("u + u^2", kU, 7);
    const auto b = reversion(a);
    EXPECT_EQ(compose(a, {b}), TruncatedSeries::variable(kU, 7, "u"));
    // Catalan numbers with alternating signs.
    EXPECT_EQ(b, S("u - u^2 + 2*u^3 - 5*u^4 + 14*u^5 - 42*u^6 + 132*u^7", kU, 7));
}

TEST(Series, ImplicitSolveHeisenberg) {
    const Variables v{"z", "x", "t", "u"};
    const auto rhs = S("t + 2*i*z*x", v, 10);
    EXPECT_EQ(to_dsl(implicit_solve(rhs, "u", 10)), "t + 2*i*z*x");
}

TEST(Series, ImplicitSolveInfiniteType) {
    const Variables v{"z", "x", "t", "u"};
    const int n = 12;
    const auto rhs = S("t + i*z*x*u + i*z*x*t", v, n);
    const auto q = implicit_solve(rhs, "u", n);
    // tau (1 + i z x)/(1 - i z x).
    const auto num = S("t + i*z*x*t", kZXT, n);
    const auto den = S("1 - i*z*x", kZXT, n);
    EXPECT_EQ(q, divide(num, den));
    EXPECT_EQ(q.coefficient(MultiIndex{2, 2, 1}), ComplexRational(-2));
    EXPECT_EQ(q.coefficient(MultiIndex{3, 3, 1}), ComplexRational(Rational(0), Rational(-2)));
    auto sub = S("t + i*z*x*t", v, n);
    sub += S("i*z*x*u", v, n);
    const auto back = compose(sub, {TruncatedSeries::variable(kZXT, n, "z"), TruncatedSeries::variable(kZXT, n, "x"),
                                    TruncatedSeries::variable(kZXT, n, "t"), q});
    EXPECT_EQ(back, q);
}

TEST(Series, ImplicitSolveNoContraction) {
    const Variables v{"z", "u"};
    try {
        implicit_solve(S("z + u", v, 4), "u", 4);
        FAIL();
    } catch (const SeriesError& e) {
        EXPECT_EQ(e.code(), SeriesErrc::NoContraction);
    }
}

TEST(SeriesProperties, RingAxiomsRandom) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        const auto a = random_series(rng, kZXT, 6, 6);
        const auto b = random_series(rng, kZXT, 6, 6);
        const auto c = random_series(rng, kZXT, 6, 6);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a + b, b + a);
    }
}

TEST(SeriesProperties, DivideMultipliesBack) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        auto b = random_series(rng, kZX, 7, 5);
        b.set(MultiIndex(2), ComplexRational(Rational(trial + 1), Rational(1)));
        const auto a = random_series(rng, kZX, 7, 7);
        const auto q = divide(a, b);
        EXPECT_EQ(q * b, a.truncated(q.order()));
    }
}

TEST(SeriesProperties, ConjugateIsHomomorphism) {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_series(rng, kZX, 6, 6);
        const auto b = random_series(rng, kZX, 6, 6);
        EXPECT_EQ(conjugate_series(a * b), conjugate_series(a) * conjugate_series(b));
        EXPECT_EQ(conjugate_series(a + b), conjugate_series(a) + conjugate_series(b));
        EXPECT_EQ(conjugate_series(conjugate_series(a)), a);
    }
}

TEST(SeriesProperties, ComposeAssociative) {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = random_series(rng, kU, 6, 5);
        auto g = random_series(rng, kU, 6, 5);
        auto h = random_series(rng, kZX, 6, 5);
        g.set(MultiIndex(1), ComplexRational(0));
        h.set(MultiIndex(2), ComplexRational(0));
        EXPECT_EQ(compose(compose(f, {g}), {h}), compose(f, {compose(g, {h})}));
    }
}

TEST(SeriesProperties, FloatAgreesWithExact) {
    std::mt19937 rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_series(rng, kZXT, 8, 6);
        auto b = random_series(rng, kZXT, 8, 6);
        b.set(MultiIndex(3), ComplexRational(3));
        EXPECT_LT(max_coefficient_distance(to_float(a) * to_float(b), a * b), 1e-10);
        EXPECT_LT(max_coefficient_distance(to_float(a) + to_float(b), a + b), 1e-10);
        const auto qe = divide(a, b);
        const auto qf = divide(to_float(a), to_float(b));
        EXPECT_LT(max_coefficient_distance(qf, qe), 1e-10);
    }
}

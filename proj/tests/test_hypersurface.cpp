#include <chrono>
#include <random>

#include <gtest/gtest.h>

#include "crjet/dsl.hpp"
#include "crjet/hypersurface.hpp"
#include "crjet/series_io.hpp"
#include "crjet/series_ops.hpp"

using namespace crjet;

namespace {

NormalFormSurface surface(const std::string& q, int order = 12) { return {parse_series(q, kSurfaceVars, order)}; }
RealGraph graph(const std::string& phi, int order = 12) { return {parse_series(phi, kGraphVars, order)}; }

}  // namespace

TEST(Hypersurface, FromRealGraphHeisenberg) {
    EXPECT_EQ(to_dsl(from_real_graph(graph("z*x")).Q), "t + 2*i*z*x");
}

TEST(Hypersurface, FromRealGraphZ4) {
    EXPECT_EQ(to_dsl(from_real_graph(graph("z^2*x^2")).Q), "t + 2*i*z^2*x^2");
}

TEST(Hypersurface, FromRealGraphInfiniteType) {
    const auto s = from_real_graph(graph("z*x*s"));
    const auto expected = divide(parse_series("t + i*z*x*t", kSurfaceVars, 12), parse_series("1 - i*z*x", kSurfaceVars, 12));
    EXPECT_EQ(s.Q, expected.truncated(s.order()));
    EXPECT_EQ(s.Q.coefficient(MultiIndex{1, 1, 1}), ComplexRational(Rational(0), Rational(2)));
    EXPECT_EQ(s.Q.coefficient(MultiIndex{2, 2, 1}), ComplexRational(-2));
}

TEST(Hypersurface, FromRealGraphRejectsInvalid) {
    EXPECT_THROW(from_real_graph(graph("z + x")), SurfaceError);
    EXPECT_THROW(from_real_graph(graph("i*z*x")), SurfaceError);
    EXPECT_TRUE(check_real_graph(graph("z*x^2 + x*z^2")).empty());
    EXPECT_FALSE(check_real_graph(graph("z*x^2")).empty());
}

TEST(Hypersurface, CheckNormal) {
    EXPECT_TRUE(check_normal(surface("t + 2*i*z*x")).pass);
    const auto bad = check_normal(surface("t + z"));
    EXPECT_FALSE(bad.pass);
    ASSERT_EQ(bad.violations.size(), 1u);
    EXPECT_EQ(bad.violations[0], "z");
    EXPECT_TRUE(check_normal(surface("t")).pass);
}

TEST(Hypersurface, CheckReality) {
    EXPECT_TRUE(check_reality(surface("t + 2*i*z*x")).pass);
    const auto bad = check_reality(surface("t + z*x"));
    EXPECT_FALSE(bad.pass);
    // Q(z, x, t + x z) - t = 2 z x to lowest order.
    EXPECT_EQ(bad.residual.coefficient(MultiIndex{1, 1, 0}), ComplexRational(2));
    EXPECT_TRUE(check_reality(surface("t")).pass);
}

TEST(Hypersurface, QTable) {
    const auto heis = q_table(surface("t + 2*i*z*x"), 4);
    for (const auto& [key, q] : heis) {
        if (key == std::make_pair(1, 0))
            EXPECT_EQ(to_dsl(q), "2*i*x");
        else
            EXPECT_TRUE(q.is_zero()) << key.first << "," << key.second;
    }
    const auto z4 = q_table(surface("t + 2*i*z^2*x^2"), 3);
    EXPECT_EQ(to_dsl(z4.at({2, 0})), "4*i*x^2");
    EXPECT_TRUE(z4.at({1, 0}).is_zero());
    EXPECT_TRUE(z4.at({1, 1}).is_zero());
    const auto inf = q_table(from_real_graph(graph("z*x*s")), 3);
    EXPECT_EQ(to_dsl(inf.at({1, 1})), "2*i*x");
    EXPECT_TRUE(inf.at({1, 0}).is_zero());
    EXPECT_TRUE(inf.at({2, 0}).is_zero());
}

TEST(Hypersurface, InvariantsHeisenberg) {
    const auto r = compute_invariants(surface("t + 2*i*z*x"));
    EXPECT_EQ(r.m0, 1);
    EXPECT_EQ(r.alpha0, 1);
    EXPECT_EQ(r.mu0, 0);
    EXPECT_EQ(r.l, 1);
    EXPECT_EQ(r.beta0, 1);
    EXPECT_TRUE(r.finite_type);
    EXPECT_FALSE(r.levi_flat_unknown);
    EXPECT_EQ(r.certified_order, 12);
}

TEST(Hypersurface, InvariantsZ4) {
    const auto r = compute_invariants(surface("t + 2*i*z^2*x^2"));
    EXPECT_EQ(r.m0, 2);
    EXPECT_EQ(r.alpha0, 2);
    EXPECT_EQ(r.mu0, 0);
    EXPECT_EQ(r.l, 2);
    EXPECT_EQ(r.beta0, 2);
    EXPECT_TRUE(r.finite_type);
}

TEST(Hypersurface, InvariantsInfiniteType) {
    const auto r = compute_invariants(from_real_graph(graph("z*x*s")));
    EXPECT_EQ(r.m0, 2);
    EXPECT_EQ(r.alpha0, 1);
    EXPECT_EQ(r.mu0, 1);
    EXPECT_EQ(r.l, 1);
    EXPECT_FALSE(r.beta0.has_value());
    EXPECT_FALSE(r.finite_type);
}

TEST(Hypersurface, InvariantsLeviFlat) {
    const auto r = compute_invariants(surface("t", 9));
    EXPECT_FALSE(r.m0.has_value());
    EXPECT_TRUE(r.levi_flat_unknown);
    EXPECT_EQ(r.certified_order, 9);
    EXPECT_EQ(describe(r), "(m0, alpha0, mu0, l, beta0) = (inf<=9, -, -, -, -)");
}

TEST(Hypersurface, TieBreakPrefersSmallerMu) {
    // q_{20} and q_{11} both nonzero with alpha + mu = 2: mu0 = 0 wins.
    const auto s = from_real_graph(graph("z^2*x^2 + z*x*s"));
    const auto r = compute_invariants(s);
    EXPECT_EQ(r.m0, 2);
    EXPECT_EQ(r.alpha0, 2);
    EXPECT_EQ(r.mu0, 0);
}

TEST(HypersurfaceProperties, InvariantsStableUnderDilation) {
    const std::vector<NormalFormSurface> corpus{surface("t + 2*i*z*x"), surface("t + 2*i*z^2*x^2"),
                                                from_real_graph(graph("z*x*s"))};
    const std::vector<std::pair<ComplexRational, Rational>> dilations{
        {ComplexRational(2), Rational(4)},
        {ComplexRational(Rational(3, 5), Rational(4, 5)), Rational(1)},
        {ComplexRational(Rational(1, 2), Rational(1)), Rational(-3)},
    };
    for (const auto& s : corpus) {
        const auto base = compute_invariants(s);
        for (const auto& [lambda, rho] : dilations) {
            const auto r = compute_invariants(dilate(s, lambda, rho));
            EXPECT_EQ(r.m0, base.m0);
            EXPECT_EQ(r.alpha0, base.alpha0);
            EXPECT_EQ(r.mu0, base.mu0);
            EXPECT_EQ(r.l, base.l);
            EXPECT_EQ(r.beta0, base.beta0);
        }
    }
}

TEST(HypersurfaceProperties, CorpusQVanishAtOrigin) {
    const std::vector<NormalFormSurface> corpus{surface("t + 2*i*z*x"), surface("t + 2*i*z^2*x^2"),
                                                from_real_graph(graph("z*x*s"))};
    for (const auto& s : corpus)
        for (const auto& [key, q] : q_table(s, 6)) EXPECT_TRUE(q.constant_term().is_zero());
}

TEST(HypersurfaceProperties, RandomGraphsAreNormalAndReal) {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 4);
    std::uniform_int_distribution<int> ex(1, 3);
    std::uniform_int_distribution<int> sx(0, 2);
    for (int trial = 0; trial < 10; ++trial) {
        TruncatedSeries phi(kGraphVars, 8);
        for (int k = 0; k < 4; ++k) {
            const int a = ex(rng), b = ex(rng), c = sx(rng);
            const ComplexRational coef(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
            phi.add_to(MultiIndex{a, b, c}, coef);
            phi.add_to(MultiIndex{b, a, c}, coef.conj());
        }
        if (phi.is_zero()) continue;
        const auto s = from_real_graph({phi});
        EXPECT_TRUE(check_normal(s).pass);
        EXPECT_TRUE(check_reality(s).pass);
    }
}

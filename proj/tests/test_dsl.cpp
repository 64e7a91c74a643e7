#include <gtest/gtest.h>

#include "crjet/dsl.hpp"
#include "crjet/series_io.hpp"

using namespace crjet;

namespace {
const Variables kZXT{"z", "x", "t"};
}

TEST(Dsl, SeriesExamples) {
    EXPECT_EQ(to_dsl(parse_series("t + 2*i*z*x", kZXT, 12)), "t + 2*i*z*x");
    EXPECT_TRUE(parse_series("0", kZXT, 12).is_zero());
    EXPECT_TRUE(parse_series("1/2*z^2 - 1/2*z^2", kZXT, 12).is_zero());
}

TEST(Dsl, GaussianCoefficients) {
    const auto s = parse_series("(1/2 + 3*i)*z - 2/3*i*x^2 + 0.25*t", kZXT, 4);
    EXPECT_EQ(s.coefficient(MultiIndex{1, 0, 0}), ComplexRational(Rational(1, 2), Rational(3)));
    EXPECT_EQ(s.coefficient(MultiIndex{0, 2, 0}), ComplexRational(Rational(0), Rational(-2, 3)));
    EXPECT_EQ(s.coefficient(MultiIndex{0, 0, 1}), ComplexRational(Rational(1, 4)));
    EXPECT_EQ(parse_series(to_dsl(s), kZXT, 4), s);
}

TEST(Dsl, HighDegreeTermsWarn) {
    std::vector<Diagnostic> warnings;
    const auto s = parse_series("z + z^5", kZXT, 3, &warnings);
    EXPECT_EQ(to_dsl(s), "z");
    ASSERT_EQ(warnings.size(), 1u);
    EXPECT_EQ(warnings[0].location.column, 5);
}

TEST(Dsl, ErrorsAreLocated) {
    try {
        parse_series("t + 2*q", kZXT, 4);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.location().line, 1);
        EXPECT_EQ(e.location().column, 7);
    }
    EXPECT_THROW(parse_series("t +", kZXT, 4), ParseError);
    EXPECT_THROW(parse_series("1/0*z", kZXT, 4), ParseError);
    EXPECT_THROW(parse_series("(z + 1)*t", kZXT, 4), ParseError);
}

TEST(Dsl, SurfaceDocument) {
    const auto doc = parse_document("# Heisenberg\nvars: z x t\norder: 8\nQ: t + 2*i*z*x\n");
    EXPECT_EQ(doc.kind, DocumentKind::Surface);
    EXPECT_EQ(doc.order, 8);
    EXPECT_EQ(to_dsl(doc.at("Q")), "t + 2*i*z*x");
    EXPECT_EQ(parse_document(print_document(doc)), doc);
}

TEST(Dsl, OrderOverride) {
    const auto doc = parse_document("order: 8\nQ: t + 2*i*z*x\n", 12);
    EXPECT_EQ(doc.order, 12);
}

TEST(Dsl, MapDocument) {
    const auto doc = parse_document("F: z + z*w\nG: w + w^2\n");
    EXPECT_EQ(doc.kind, DocumentKind::Map);
    EXPECT_EQ(doc.vars, (Variables{"z", "w"}));
    EXPECT_EQ(doc.order, kDefaultGeometryOrder);
}

TEST(Dsl, OdeDocumentWithTheta) {
    const auto doc = parse_document("gamma: 0\nvars: x y1 y2\np: theta1*y1 + y2, -y1 + theta2*y2\nq: 1\ntheta: [2, 1/2]\n");
    EXPECT_EQ(doc.kind, DocumentKind::Ode);
    EXPECT_EQ(doc.gamma, 0);
    ASSERT_EQ(doc.p.size(), 2u);
    EXPECT_EQ(to_dsl(doc.p[0]), "2*y1 + y2");
    EXPECT_EQ(to_dsl(doc.p[1]), "-y1 + 1/2*y2");
    EXPECT_EQ(doc.order, kDefaultOdeOrder);
    EXPECT_EQ(parse_document(print_document(doc)), doc);
}

TEST(Dsl, DocumentErrors) {
    try {
        parse_document("order: 8\nQ: t + 2*i*z*x\nbogus: 3\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.location().line, 3);
        EXPECT_EQ(e.location().column, 1);
    }
    try {
        parse_document("order: 8\nQ: t + 2*i*z*\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.location().line, 2);
    }
    EXPECT_THROW(parse_document("gamma: 0\nvars: x y\np: i*y\nq: 1\n"), ParseError);
}

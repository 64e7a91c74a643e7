#include "crjet/series_io.hpp"

#include <cstdio>
#include <sstream>

namespace crjet {

const char* to_string(SeriesErrc code) {
    switch (code) {
        case SeriesErrc::VariableMismatch: return "VariableMismatch";
        case SeriesErrc::UnknownVariable: return "UnknownVariable";
        case SeriesErrc::DivisorOrderExceedsDividend: return "DivisorOrderExceedsDividend";
        case SeriesErrc::NonmonomialLeadingForm: return "NonmonomialLeadingForm";
        case SeriesErrc::SupportNotKthPower: return "SupportNotKthPower";
        case SeriesErrc::RootNotInField: return "RootNotInField";
        case SeriesErrc::ZeroSeries: return "ZeroSeries";
        case SeriesErrc::NonzeroConstantTerm: return "NonzeroConstantTerm";
        case SeriesErrc::NoContraction: return "NoContraction";
    }
    return "SeriesError";
}

std::string to_dsl(const Rational& c) { return c.str(); }

std::string to_dsl(const ComplexRational& c) {
    if (c.imag().is_zero()) return c.real().str();
    std::string im;
    if (c.imag() == 1)
        im = "i";
    else if (c.imag() == -1)
        im = "-i";
    else
        im = c.imag().str() + "*i";
    if (c.real().is_zero()) return im;
    const bool negative = c.imag() < 0;
    const Rational abs_im = negative ? Rational(-c.imag()) : c.imag();
    return "(" + c.real().str() + (negative ? " - " : " + ") + (abs_im == 1 ? std::string("i") : abs_im.str() + "*i") + ")";
}

std::string to_dsl(const Complex& c) {
    char buf[96];
    if (c.imag() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.17g", c.real());
    } else {
        std::snprintf(buf, sizeof buf, "(%.17g %s %.17g*i)", c.real(), c.imag() < 0 ? "-" : "+", std::abs(c.imag()));
    }
    return buf;
}

std::string monomial_to_dsl(const Variables& vars, const MultiIndex& m) {
    std::string out;
    for (int i = 0; i < m.arity(); ++i) {
        if (m[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += vars[static_cast<std::size_t>(i)];
        if (m[i] > 1) out += "^" + std::to_string(m[i]);
    }
    return out;
}

namespace {

// Splits a coefficient into (is_negative, magnitude text) for sign-aware joins.
std::pair<bool, std::string> signed_text(const Rational& c) {
    if (c < 0) return {true, Rational(-c).str()};
    return {false, c.str()};
}

std::pair<bool, std::string> signed_text(const ComplexRational& c) {
    if (c.imag().is_zero()) return signed_text(c.real());
    if (c.real().is_zero()) {
        const bool negative = c.imag() < 0;
        return {negative, to_dsl(ComplexRational(Rational(0), negative ? Rational(-c.imag()) : c.imag()))};
    }
    return {false, to_dsl(c)};
}

std::pair<bool, std::string> signed_text(const Complex& c) {
    if (c.imag() == 0.0 && c.real() < 0) return {true, to_dsl(Complex(-c.real(), 0.0))};
    return {false, to_dsl(c)};
}

template <typename Scalar>
std::string series_to_dsl(const Series<Scalar>& s) {
    if (s.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : s.terms()) {
        auto [negative, text] = signed_text(c);
        const std::string mono = monomial_to_dsl(s.variables(), m);
        std::string term;
        if (mono.empty())
            term = text;
        else if (text == "1")
            term = mono;
        else
            term = text + "*" + mono;
        if (first)
            os << (negative ? "-" : "") << term;
        else
            os << (negative ? " - " : " + ") << term;
        first = false;
    }
    return os.str();
}

}  // namespace

std::string to_dsl(const TruncatedSeries& s) { return series_to_dsl(s); }
std::string to_dsl(const RealSeries& s) { return series_to_dsl(s); }
std::string to_dsl(const FloatSeries& s) { return series_to_dsl(s); }

std::string term_to_dsl(const Variables& vars, const MultiIndex& m, const ComplexRational& c) {
    TruncatedSeries one(vars, m.degree());
    one.set(m, c);
    return to_dsl(one);
}

}  // namespace crjet

#ifndef CRJET_SERIES_IO_HPP
#define CRJET_SERIES_IO_HPP

#include <ostream>
#include <string>

#include "crjet/series.hpp"

namespace crjet {

// Coefficients and series rendered in the input DSL syntax, e.g.
// "t + 2*i*z*x - (1/2 + 3*i)*z^2". Exact series reparse to equal values.
std::string to_dsl(const Rational& c);
std::string to_dsl(const ComplexRational& c);
std::string to_dsl(const Complex& c);

std::string to_dsl(const TruncatedSeries& s);
std::string to_dsl(const RealSeries& s);
std::string to_dsl(const FloatSeries& s);

std::string monomial_to_dsl(const Variables& vars, const MultiIndex& m);
std::string term_to_dsl(const Variables& vars, const MultiIndex& m, const ComplexRational& c);

inline std::ostream& operator<<(std::ostream& os, const ComplexRational& c) { return os << to_dsl(c); }

template <typename Scalar>
std::ostream& operator<<(std::ostream& os, const Series<Scalar>& s) {
    return os << to_dsl(s) << " + O(" << s.order() + 1 << ")";
}

}  // namespace crjet

#endif  // CRJET_SERIES_IO_HPP

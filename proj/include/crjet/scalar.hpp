#ifndef CRJET_SCALAR_HPP
#define CRJET_SCALAR_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>

#include <boost/multiprecision/gmp.hpp>

namespace crjet {

// Arbitrary precision rational, always stored in lowest terms by GMP.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

using Complex = std::complex<double>;

// Gaussian rational re + im*i.
class ComplexRational {
public:
    ComplexRational() = default;
    ComplexRational(Rational re) : re_(std::move(re)) {}
    ComplexRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}
    ComplexRational(long re) : re_(re) {}
    ComplexRational(int re) : re_(re) {}

    static ComplexRational i() { return {Rational(0), Rational(1)}; }

    const Rational& real() const { return re_; }
    const Rational& imag() const { return im_; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }

    ComplexRational conj() const { return {re_, -im_}; }
    Rational norm() const { return re_ * re_ + im_ * im_; }

    ComplexRational& operator+=(const ComplexRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    ComplexRational& operator-=(const ComplexRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    ComplexRational& operator*=(const ComplexRational& o) {
        Rational re = re_ * o.re_ - im_ * o.im_;
        im_ = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(re);
        return *this;
    }
    // Throws std::domain_error on division by zero.
    ComplexRational& operator/=(const ComplexRational& o);

    friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
    friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
    friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
    friend ComplexRational operator/(ComplexRational a, const ComplexRational& b) { return a /= b; }
    friend ComplexRational operator-(const ComplexRational& a) { return {-a.re_, -a.im_}; }
    friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const ComplexRational& a, const ComplexRational& b) { return !(a == b); }

    Complex to_complex() const {
        return {re_.convert_to<double>(), im_.convert_to<double>()};
    }

private:
    Rational re_{0};
    Rational im_{0};
};

ComplexRational pow(const ComplexRational& base, int exponent);

// Best rational approximation with denominator <= max_den (continued fractions).
Rational rationalize(double x, long max_den);

std::string to_string(const Rational& r);

// Uniform access to the coefficient rings used by the series templates.
template <typename Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static bool is_zero(const Rational& x, double) { return x.is_zero(); }
    static Rational conj(const Rational& x) { return x; }
    static Rational from_int(long v) { return Rational(v); }
    static Rational from_rational(const Rational& r) { return r; }
    static double magnitude(const Rational& x) { return std::abs(x.convert_to<double>()); }
    static Complex to_complex(const Rational& x) { return {x.convert_to<double>(), 0.0}; }
};

template <>
struct ScalarTraits<ComplexRational> {
    static constexpr bool exact = true;
    static bool is_zero(const ComplexRational& x, double) { return x.is_zero(); }
    static ComplexRational conj(const ComplexRational& x) { return x.conj(); }
    static ComplexRational from_int(long v) { return ComplexRational(v); }
    static ComplexRational from_rational(const Rational& r) { return ComplexRational(r); }
    static double magnitude(const ComplexRational& x) { return std::abs(x.to_complex()); }
    static Complex to_complex(const ComplexRational& x) { return x.to_complex(); }
};

template <>
struct ScalarTraits<Complex> {
    static constexpr bool exact = false;
    static bool is_zero(const Complex& x, double tol) { return std::abs(x) <= tol; }
    static Complex conj(const Complex& x) { return std::conj(x); }
    static Complex from_int(long v) { return {static_cast<double>(v), 0.0}; }
    static Complex from_rational(const Rational& r) { return {r.convert_to<double>(), 0.0}; }
    static double magnitude(const Complex& x) { return std::abs(x); }
    static Complex to_complex(const Complex& x) { return x; }
};

template <typename Scalar>
Scalar scalar_pow(Scalar base, int exponent) {
    Scalar result = ScalarTraits<Scalar>::from_int(1);
    if (exponent < 0) {
        base = ScalarTraits<Scalar>::from_int(1) / base;
        exponent = -exponent;
    }
    while (exponent > 0) {
        if (exponent & 1) result *= base;
        exponent >>= 1;
        if (exponent > 0) base *= base;
    }
    return result;
}

inline Complex to_complex(const ComplexRational& x) { return x.to_complex(); }

Integer factorial(int n);
Integer binomial(int n, int k);

}  // namespace crjet

#endif  // CRJET_SCALAR_HPP

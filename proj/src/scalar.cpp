#include "crjet/scalar.hpp"

#include <stdexcept>

namespace crjet {

ComplexRational& ComplexRational::operator/=(const ComplexRational& o) {
    const Rational n = o.norm();
    if (n.is_zero()) throw std::domain_error("ComplexRational: division by zero");
    Rational re = (re_ * o.re_ + im_ * o.im_) / n;
    im_ = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(re);
    return *this;
}

ComplexRational pow(const ComplexRational& base, int exponent) {
    return scalar_pow(base, exponent);
}

Rational rationalize(double x, long max_den) {
    if (!std::isfinite(x)) throw std::domain_error("rationalize: non-finite value");
    const bool negative = x < 0;
    double v = std::abs(x);
    // Convergents h/k of the continued fraction of v.
    Integer h_prev = 1, h = static_cast<long>(std::floor(v));
    Integer k_prev = 0, k = 1;
    double frac = v - std::floor(v);
    for (int iter = 0; iter < 64 && frac > 1e-15; ++iter) {
        v = 1.0 / frac;
        const long a = static_cast<long>(std::floor(v));
        frac = v - std::floor(v);
        Integer h_next = a * h + h_prev;
        Integer k_next = a * k + k_prev;
        if (k_next > max_den) break;
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
    }
    Rational r(h, k);
    return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) { return r.str(); }

Integer factorial(int n) {
    Integer f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

Integer binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    Integer b = 1;
    for (int i = 1; i <= k; ++i) {
        b *= n - k + i;
        b /= i;
    }
    return b;
}

}  // namespace crjet

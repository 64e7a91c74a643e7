#ifndef CRJET_SERIES_OPS_HPP
#define CRJET_SERIES_OPS_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "crjet/series.hpp"

namespace crjet {

// Vanishing order of a truncated series. For the zero truncation the order is
// unknown and only certified to be at least order + 1.
struct VanishingOrder {
    std::optional<int> value;
    int lower_bound = 0;

    bool known() const { return value.has_value(); }
    friend bool operator==(const VanishingOrder&, const VanishingOrder&) = default;
};

template <typename Scalar>
VanishingOrder vanishing_order(const Series<Scalar>& a, const std::optional<std::string>& var = std::nullopt) {
    if (a.is_zero()) return {std::nullopt, a.order() + 1};
    if (!var) return {a.terms().begin()->first.degree(), a.terms().begin()->first.degree()};
    const int v = a.require_index(*var);
    int best = kMaxExponent + 1;
    for (const auto& [m, c] : a.terms()) best = std::min(best, m[v]);
    return {best, best};
}

template <typename Scalar>
Series<Scalar> partial_derivative(const Series<Scalar>& a, const std::string& var, int times = 1) {
    const int v = a.require_index(var);
    Series<Scalar> r(a.variables(), std::max(a.order() - times, 0), a.tolerance());
    for (const auto& [m, c] : a.terms()) {
        const int e = m[v];
        if (e < times) continue;
        long factor = 1;
        for (int j = 0; j < times; ++j) factor *= e - j;
        r.set(m.with(v, e - times), c * ScalarTraits<Scalar>::from_int(factor));
    }
    return r;
}

// bar(a)(zeta) = conj(a(conj(zeta))): conjugate every coefficient.
template <typename Scalar>
Series<Scalar> conjugate_series(const Series<Scalar>& a) {
    Series<Scalar> r(a.variables(), a.order(), a.tolerance());
    for (const auto& [m, c] : a.terms()) r.set(m, ScalarTraits<Scalar>::conj(c));
    return r;
}

// Re-expresses `a` over `target` variables; mapping[i] names the target
// variable that replaces a.variables()[i].
template <typename Scalar>
Series<Scalar> embed(const Series<Scalar>& a, const Variables& target, const Variables& mapping, int order = -1) {
    if (mapping.size() != a.variables().size())
        throw SeriesError(SeriesErrc::VariableMismatch, "embed: mapping arity differs from series arity");
    Series<Scalar> r(target, order < 0 ? a.order() : std::min(order, a.order()), a.tolerance());
    std::vector<int> index(mapping.size());
    for (std::size_t i = 0; i < mapping.size(); ++i) index[i] = r.require_index(mapping[i]);
    for (const auto& [m, c] : a.terms()) {
        MultiIndex t(r.arity());
        for (std::size_t i = 0; i < mapping.size(); ++i) t.set(index[i], t[index[i]] + m[static_cast<int>(i)]);
        r.add_to(t, c);
    }
    return r;
}

template <typename Scalar>
Series<Scalar> rename(const Series<Scalar>& a, const Variables& names) {
    return embed(a, names, names);
}

// Coefficient of var^k, kept over the same variables (var exponent 0).
template <typename Scalar>
Series<Scalar> extract(const Series<Scalar>& a, const std::string& var, int k) {
    const int v = a.require_index(var);
    Series<Scalar> r(a.variables(), std::max(a.order() - k, 0), a.tolerance());
    for (const auto& [m, c] : a.terms())
        if (m[v] == k) r.set(m.with(v, 0), c);
    return r;
}

// a with var set to zero.
template <typename Scalar>
Series<Scalar> restrict_zero(const Series<Scalar>& a, const std::string& var) {
    return extract(a, var, 0).truncated(a.order());
}

// Removes variables that do not occur in `a`.
template <typename Scalar>
Series<Scalar> drop_variables(const Series<Scalar>& a, const Variables& keep) {
    Series<Scalar> r(keep, a.order(), a.tolerance());
    std::vector<int> index;
    for (const auto& name : keep) index.push_back(a.require_index(name));
    for (const auto& [m, c] : a.terms()) {
        MultiIndex t(r.arity());
        int kept = 0;
        for (std::size_t i = 0; i < index.size(); ++i) {
            t.set(static_cast<int>(i), m[index[i]]);
            kept += m[index[i]];
        }
        if (kept != m.degree())
            throw SeriesError(SeriesErrc::VariableMismatch, "drop_variables: dropped variable occurs in series");
        r.set(t, c);
    }
    return r;
}

// Substitutes subs[i] for outer.variables()[i]. Every substitution must have a
// zero constant term; the result is truncated at the smallest certified order.
template <typename Scalar>
Series<Scalar> compose(const Series<Scalar>& outer, const std::vector<Series<Scalar>>& subs) {
    if (static_cast<int>(subs.size()) != outer.arity())
        throw SeriesError(SeriesErrc::VariableMismatch, "compose: one substitution per outer variable required");
    if (subs.empty()) throw SeriesError(SeriesErrc::VariableMismatch, "compose: empty substitution list");
    int order = outer.order();
    double tol = outer.tolerance();
    for (const auto& s : subs) {
        Series<Scalar>::check_compatible(s, subs.front());
        if (!ScalarTraits<Scalar>::is_zero(s.constant_term(), s.tolerance()))
            throw SeriesError(SeriesErrc::NonzeroConstantTerm, "compose: substitution has a nonzero constant term");
        order = std::min(order, s.order());
        tol = std::max(tol, s.tolerance());
    }
    const Variables& target = subs.front().variables();
    std::vector<std::vector<Series<Scalar>>> powers(subs.size());
    for (std::size_t i = 0; i < subs.size(); ++i) {
        const int max_e = std::min(outer.max_exponent(static_cast<int>(i)), order);
        powers[i].push_back(Series<Scalar>::constant(target, order, ScalarTraits<Scalar>::from_int(1), tol));
        for (int e = 1; e <= max_e; ++e) powers[i].push_back(multiply(powers[i].back(), subs[i], order));
    }
    Series<Scalar> result(target, order, tol);
    for (const auto& [m, c] : outer.terms()) {
        if (m.degree() > order) break;
        std::optional<Series<Scalar>> term;
        for (int i = 0; i < outer.arity(); ++i) {
            if (m[i] == 0) continue;
            term = term ? multiply(*term, powers[i][m[i]], order) : powers[i][m[i]];
        }
        if (term)
            result += (*term) * c;
        else
            result.add_to(MultiIndex(static_cast<int>(target.size())), c);
    }
    return result;
}

// Inverse of a series with invertible constant term (Newton iteration).
template <typename Scalar>
Series<Scalar> reciprocal(const Series<Scalar>& b) {
    const Scalar c0 = b.constant_term();
    if (ScalarTraits<Scalar>::is_zero(c0, b.tolerance()))
        throw SeriesError(SeriesErrc::DivisorOrderExceedsDividend, "reciprocal: constant term vanishes");
    const Scalar one = ScalarTraits<Scalar>::from_int(1);
    Series<Scalar> r = Series<Scalar>::constant(b.variables(), b.order(), one / c0, b.tolerance());
    const Series<Scalar> two = Series<Scalar>::constant(b.variables(), b.order(), ScalarTraits<Scalar>::from_int(2),
                                                        b.tolerance());
    for (int precision = 1; precision <= b.order(); precision *= 2) r = r * (two - b * r);
    return r;
}

// c with b*c = a to the representable order. The divisor's lowest-degree form
// must be a single monomial dividing every term of both operands.
template <typename Scalar>
Series<Scalar> divide(const Series<Scalar>& a, const Series<Scalar>& b) {
    Series<Scalar>::check_compatible(a, b);
    if (b.is_zero()) throw SeriesError(SeriesErrc::DivisorOrderExceedsDividend, "divide: divisor is the zero truncation");
    const auto& lowest = b.terms().begin();
    const MultiIndex lead = lowest->first;
    int lowest_count = 0;
    for (const auto& [m, c] : b.terms()) {
        if (m.degree() == lead.degree()) ++lowest_count;
        if (!divides(lead, m))
            throw SeriesError(SeriesErrc::NonmonomialLeadingForm,
                              "divide: divisor is not a monomial times a unit");
    }
    if (lowest_count != 1)
        throw SeriesError(SeriesErrc::NonmonomialLeadingForm, "divide: lowest-degree form of divisor is not a monomial");
    const int shift = lead.degree();
    if (!a.is_zero() && a.terms().begin()->first.degree() < shift)
        throw SeriesError(SeriesErrc::DivisorOrderExceedsDividend, "divide: dividend vanishes to lower order than divisor");
    const int order = std::min(a.order(), b.order()) - shift;
    if (order < 0)
        throw SeriesError(SeriesErrc::DivisorOrderExceedsDividend, "divide: nothing representable after division");
    Series<Scalar> a_red(a.variables(), order, a.tolerance());
    for (const auto& [m, c] : a.terms()) {
        if (!divides(lead, m))
            throw SeriesError(SeriesErrc::DivisorOrderExceedsDividend, "divide: dividend not divisible by leading monomial");
        a_red.set(m - lead, c);
    }
    Series<Scalar> b_red(b.variables(), order, b.tolerance());
    for (const auto& [m, c] : b.terms()) b_red.set(m - lead, c);
    return a_red * reciprocal(b_red);
}

namespace detail {

// Exact k-th root on the principal branch when it lies in the coefficient field.
template <typename Scalar>
Scalar principal_root(const Scalar& c, int k);

template <>
inline Complex principal_root<Complex>(const Complex& c, int k) {
    return std::pow(c, 1.0 / k);
}

template <>
inline ComplexRational principal_root<ComplexRational>(const ComplexRational& c, int k) {
    const Complex guess = std::pow(c.to_complex(), 1.0 / k);
    for (long den : {1L, 1000L, 1000000L}) {
        ComplexRational r(rationalize(guess.real(), den), rationalize(guess.imag(), den));
        if (pow(r, k) == c) return r;
    }
    throw SeriesError(SeriesErrc::RootNotInField, "kth_root: coefficient has no Gaussian-rational root");
}

template <>
inline Rational principal_root<Rational>(const Rational& c, int k) {
    if (c < 0 && k % 2 == 0) throw SeriesError(SeriesErrc::RootNotInField, "kth_root: negative rational");
    const double guess = std::pow(std::abs(c.convert_to<double>()), 1.0 / k) * (c < 0 ? -1.0 : 1.0);
    for (long den : {1L, 1000L, 1000000L}) {
        Rational r = rationalize(guess, den);
        if (scalar_pow(r, k) == c) return r;
    }
    throw SeriesError(SeriesErrc::RootNotInField, "kth_root: rational has no rational root");
}

}  // namespace detail

// r with r^k = a. The lowest-degree form of a must be c*m^k for a monomial m
// dividing every term; the constant of the root is the principal root of c.
template <typename Scalar>
Series<Scalar> kth_root(const Series<Scalar>& a, int k) {
    if (k <= 0) throw std::invalid_argument("kth_root: k must be positive");
    if (a.is_zero()) throw SeriesError(SeriesErrc::ZeroSeries, "kth_root of the zero truncation");
    const MultiIndex lead = a.terms().begin()->first;
    int count = 0;
    for (const auto& [m, c] : a.terms()) {
        if (m.degree() == lead.degree()) ++count;
        if (!divides(lead, m)) throw SeriesError(SeriesErrc::SupportNotKthPower, "lowest form does not divide the series");
    }
    if (count != 1) throw SeriesError(SeriesErrc::SupportNotKthPower, "lowest-degree form is not a monomial");
    MultiIndex root_monomial(a.arity());
    for (int i = 0; i < a.arity(); ++i) {
        if (lead[i] % k != 0) throw SeriesError(SeriesErrc::SupportNotKthPower, "leading monomial is not a k-th power");
        root_monomial.set(i, lead[i] / k);
    }
    const Scalar c0 = a.terms().begin()->second;
    const Scalar root_c0 = detail::principal_root(c0, k);
    const int shift = lead.degree();
    const int order = a.order() - shift;
    // a = c0 * lead * (1 + t), t without constant term.
    Series<Scalar> t(a.variables(), order, a.tolerance());
    const Scalar inv_c0 = ScalarTraits<Scalar>::from_int(1) / c0;
    for (const auto& [m, c] : a.terms())
        if (m != lead) t.set(m - lead, c * inv_c0);
    // (1 + t)^(1/k) = sum_j binom(1/k, j) t^j.
    Series<Scalar> sum = Series<Scalar>::constant(a.variables(), order, ScalarTraits<Scalar>::from_int(1), a.tolerance());
    Series<Scalar> power = sum;
    Rational coeff(1);
    const Rational exponent = Rational(1) / k;
    for (int j = 1; j <= order; ++j) {
        power = power * t;
        if (power.is_zero()) break;
        coeff *= (exponent - (j - 1));
        coeff /= j;
        sum += power * ScalarTraits<Scalar>::from_rational(coeff);
    }
    sum *= root_c0;
    const int root_order = order + root_monomial.degree();
    Series<Scalar> r(a.variables(), root_order, a.tolerance());
    for (const auto& [m, c] : sum.terms()) r.set(m + root_monomial, c);
    return r;
}

// Compositional inverse of a univariate series with a(0) = 0, a'(0) != 0.
template <typename Scalar>
Series<Scalar> reversion(const Series<Scalar>& a) {
    if (a.arity() != 1) throw SeriesError(SeriesErrc::VariableMismatch, "reversion: univariate series required");
    if (!ScalarTraits<Scalar>::is_zero(a.constant_term(), a.tolerance()))
        throw SeriesError(SeriesErrc::NonzeroConstantTerm, "reversion: constant term must vanish");
    const Scalar a1 = a.coefficient(MultiIndex{1});
    if (ScalarTraits<Scalar>::is_zero(a1, a.tolerance()))
        throw SeriesError(SeriesErrc::DivisorOrderExceedsDividend, "reversion: linear coefficient vanishes");
    const Scalar inv_a1 = ScalarTraits<Scalar>::from_int(1) / a1;
    const auto x = Series<Scalar>::variable(a.variables(), a.order(), a.variables()[0], a.tolerance());
    Series<Scalar> nonlinear = a;
    nonlinear.set(MultiIndex{1}, ScalarTraits<Scalar>::from_int(0));
    // b = (x - nonlinear(b)) / a1 gains one correct order per iteration.
    Series<Scalar> b = x * inv_a1;
    for (int it = 1; it < a.order(); ++it) {
        Series<Scalar> next = (x - compose(nonlinear, {b})) * inv_a1;
        if (next == b) break;
        b = std::move(next);
    }
    return b;
}

// The unique u*(vars) with u* = rhs(vars, u*), where `unknown` names u among
// rhs's variables. Every monomial of rhs containing u must also contain some
// other variable, so the fixed-point iteration gains one order per step.
template <typename Scalar>
Series<Scalar> implicit_solve(const Series<Scalar>& rhs, const std::string& unknown, int order) {
    const int u = rhs.require_index(unknown);
    if (!ScalarTraits<Scalar>::is_zero(rhs.constant_term(), rhs.tolerance()))
        throw SeriesError(SeriesErrc::NonzeroConstantTerm, "implicit_solve: rhs has a constant term");
    for (const auto& [m, c] : rhs.terms())
        if (m[u] > 0 && m.degree() == m[u])
            throw SeriesError(SeriesErrc::NoContraction, "implicit_solve: pure power of the unknown in rhs");
    order = std::min(order, rhs.order());
    Variables vars;
    for (const auto& v : rhs.variables())
        if (v != unknown) vars.push_back(v);
    std::vector<Series<Scalar>> subs;
    for (const auto& v : rhs.variables()) {
        if (v == unknown) {
            subs.emplace_back(rhs.variables(), order, rhs.tolerance());
        } else {
            subs.push_back(Series<Scalar>::variable(rhs.variables(), order, v, rhs.tolerance()));
        }
    }
    Series<Scalar> current(rhs.variables(), order, rhs.tolerance());
    for (int it = 0; it <= order + 1; ++it) {
        subs[u] = current;
        Series<Scalar> next = compose(rhs, subs);
        if (next == current) break;
        current = std::move(next);
    }
    return drop_variables(current, vars);
}

}  // namespace crjet

#endif  // CRJET_SERIES_OPS_HPP

#ifndef CRJET_SERIES_HPP
#define CRJET_SERIES_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crjet/multi_index.hpp"
#include "crjet/scalar.hpp"

namespace crjet {

using Variables = std::vector<std::string>;

enum class SeriesErrc {
    VariableMismatch,
    UnknownVariable,
    DivisorOrderExceedsDividend,
    NonmonomialLeadingForm,
    SupportNotKthPower,
    RootNotInField,
    ZeroSeries,
    NonzeroConstantTerm,
    NoContraction,
};

const char* to_string(SeriesErrc code);

class SeriesError : public std::runtime_error {
public:
    SeriesError(SeriesErrc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    SeriesErrc code() const { return code_; }

private:
    SeriesErrc code_;
};

template <typename Scalar>
inline constexpr double default_tolerance = ScalarTraits<Scalar>::exact ? 0.0 : 1e-12;

// Multivariate power series truncated at total degree `order` (inclusive).
// Storage is sparse: absent monomials are zero and no stored coefficient is
// zero (for floating scalars: no stored coefficient has magnitude <= tolerance).
template <typename Scalar>
class Series {
public:
    using scalar_type = Scalar;
    using Traits = ScalarTraits<Scalar>;
    using Terms = std::map<MultiIndex, Scalar>;

    Series() = default;

    Series(Variables vars, int order, double tolerance = default_tolerance<Scalar>)
        : vars_(std::move(vars)), order_(std::max(order, 0)), tolerance_(tolerance) {
        if (static_cast<int>(vars_.size()) > kMaxVariables)
            throw SeriesError(SeriesErrc::VariableMismatch, "at most 8 variables are supported");
    }

    static Series constant(Variables vars, int order, const Scalar& c,
                           double tolerance = default_tolerance<Scalar>) {
        Series s(std::move(vars), order, tolerance);
        s.set(MultiIndex(s.arity()), c);
        return s;
    }

    static Series variable(Variables vars, int order, const std::string& name,
                           double tolerance = default_tolerance<Scalar>) {
        Series s(std::move(vars), order, tolerance);
        s.set(s.monomial({{name, 1}}), Traits::from_int(1));
        return s;
    }

    const Variables& variables() const { return vars_; }
    int arity() const { return static_cast<int>(vars_.size()); }
    int order() const { return order_; }
    double tolerance() const { return tolerance_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    int index_of(const std::string& name) const {
        auto it = std::find(vars_.begin(), vars_.end(), name);
        return it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
    }

    int require_index(const std::string& name) const {
        const int i = index_of(name);
        if (i < 0) throw SeriesError(SeriesErrc::UnknownVariable, "'" + name + "'");
        return i;
    }

    MultiIndex monomial(std::initializer_list<std::pair<std::string, int>> powers) const {
        MultiIndex m(arity());
        for (const auto& [name, e] : powers) m.set(require_index(name), m[require_index(name)] + e);
        return m;
    }

    Scalar coefficient(const MultiIndex& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Traits::from_int(0) : it->second;
    }

    Scalar constant_term() const { return coefficient(MultiIndex(arity())); }

    // Stores c at m; zero coefficients and monomials beyond the order are dropped.
    void set(const MultiIndex& m, Scalar c) {
        if (m.degree() > order_) return;
        if (Traits::is_zero(c, tolerance_)) {
            terms_.erase(m);
            return;
        }
        terms_[m] = std::move(c);
    }

    void add_to(const MultiIndex& m, const Scalar& c) {
        if (m.degree() > order_) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!Traits::is_zero(c, tolerance_)) terms_.emplace(m, c);
            return;
        }
        it->second += c;
        if (Traits::is_zero(it->second, tolerance_)) terms_.erase(it);
    }

    Series truncated(int order) const {
        Series s(vars_, std::min(order, order_), tolerance_);
        for (const auto& [m, c] : terms_)
            if (m.degree() <= s.order_) s.terms_.emplace(m, c);
        return s;
    }

    Series with_tolerance(double tolerance) const {
        Series s(vars_, order_, tolerance);
        for (const auto& [m, c] : terms_) s.set(m, c);
        return s;
    }

    // Lowest total degree among stored monomials (nullopt for the zero truncation).
    std::optional<int> lowest_degree() const {
        if (terms_.empty()) return std::nullopt;
        return terms_.begin()->first.degree();
    }

    int max_exponent(int var) const {
        int e = 0;
        for (const auto& [m, c] : terms_) e = std::max(e, m[var]);
        return e;
    }

    friend bool operator==(const Series& a, const Series& b) {
        return a.vars_ == b.vars_ && a.order_ == b.order_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

    Series& operator+=(const Series& o) { return accumulate(o, false); }
    Series& operator-=(const Series& o) { return accumulate(o, true); }

    Series& operator*=(const Scalar& c) {
        Terms out;
        for (auto& [m, v] : terms_) {
            Scalar p = v * c;
            if (!Traits::is_zero(p, tolerance_)) out.emplace(m, std::move(p));
        }
        terms_ = std::move(out);
        return *this;
    }

    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator-(const Series& a) {
        Series r(a.vars_, a.order_, a.tolerance_);
        for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
        return r;
    }
    friend Series operator*(Series a, const Scalar& c) { return a *= c; }
    friend Series operator*(const Scalar& c, Series a) { return a *= c; }
    friend Series operator*(const Series& a, const Series& b) { return multiply(a, b, std::min(a.order_, b.order_)); }

    // Cauchy product truncated at `order` (never beyond what the inputs certify).
    friend Series multiply(const Series& a, const Series& b, int order) {
        check_compatible(a, b);
        Series r(a.vars_, std::min({order, a.order_, b.order_}), std::max(a.tolerance_, b.tolerance_));
        if (a.terms_.empty() || b.terms_.empty()) return r;
        const int base_b = b.terms_.begin()->first.degree();
        for (const auto& [ma, ca] : a.terms_) {
            if (ma.degree() + base_b > r.order_) break;
            for (const auto& [mb, cb] : b.terms_) {
                if (ma.degree() + mb.degree() > r.order_) break;
                auto [it, inserted] = r.terms_.try_emplace(ma + mb, ca * cb);
                if (!inserted) it->second += ca * cb;
            }
        }
        r.normalize();
        return r;
    }

    static void check_compatible(const Series& a, const Series& b) {
        if (a.vars_ != b.vars_)
            throw SeriesError(SeriesErrc::VariableMismatch, "operands have different variable lists");
    }

    void normalize() {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (Traits::is_zero(it->second, tolerance_))
                it = terms_.erase(it);
            else
                ++it;
        }
    }

private:
    Series& accumulate(const Series& o, bool subtract) {
        check_compatible(*this, o);
        if (o.order_ < order_) *this = truncated(o.order_);
        tolerance_ = std::max(tolerance_, o.tolerance_);
        for (const auto& [m, c] : o.terms_) {
            if (m.degree() > order_) break;
            add_to(m, subtract ? Scalar(-c) : c);
        }
        return *this;
    }

    Variables vars_;
    int order_ = 0;
    double tolerance_ = default_tolerance<Scalar>;
    Terms terms_;
};

using TruncatedSeries = Series<ComplexRational>;
using FloatSeries = Series<Complex>;
using RealSeries = Series<Rational>;

template <typename Scalar>
Series<Scalar> pow(const Series<Scalar>& a, int exponent) {
    Series<Scalar> result = Series<Scalar>::constant(a.variables(), a.order(), ScalarTraits<Scalar>::from_int(1),
                                                     a.tolerance());
    Series<Scalar> base = a;
    while (exponent > 0) {
        if (exponent & 1) result = result * base;
        exponent >>= 1;
        if (exponent > 0) base = base * base;
    }
    return result;
}

// Coefficientwise conversion between coefficient rings.
template <typename To, typename From, typename Fn>
Series<To> map_coefficients(const Series<From>& a, Fn&& fn, double tolerance = default_tolerance<To>) {
    Series<To> r(a.variables(), a.order(), tolerance);
    for (const auto& [m, c] : a.terms()) r.set(m, fn(c));
    return r;
}

inline FloatSeries to_float(const TruncatedSeries& a, double tolerance = default_tolerance<Complex>) {
    return map_coefficients<Complex>(a, [](const ComplexRational& c) { return c.to_complex(); }, tolerance);
}

inline TruncatedSeries to_complex_rational(const RealSeries& a) {
    return map_coefficients<ComplexRational>(a, [](const Rational& c) { return ComplexRational(c); });
}

// Largest per-coefficient distance |a_m - b_m| over the common truncation.
template <typename ScalarA, typename ScalarB>
double max_coefficient_distance(const Series<ScalarA>& a, const Series<ScalarB>& b) {
    const int order = std::min(a.order(), b.order());
    std::map<MultiIndex, Complex> diff;
    for (const auto& [m, c] : a.terms())
        if (m.degree() <= order) diff[m] += ScalarTraits<ScalarA>::to_complex(c);
    for (const auto& [m, c] : b.terms())
        if (m.degree() <= order) diff[m] -= ScalarTraits<ScalarB>::to_complex(c);
    double worst = 0.0;
    for (const auto& [m, c] : diff) worst = std::max(worst, std::abs(c));
    return worst;
}

}  // namespace crjet

#endif  // CRJET_SERIES_HPP

#ifndef CRJET_MULTI_INDEX_HPP
#define CRJET_MULTI_INDEX_HPP

#include <array>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>

namespace crjet {

inline constexpr int kMaxVariables = 8;
inline constexpr int kMaxExponent = 255;

// Exponent vector of a monomial. Ordered graded-lexicographically: lower total
// degree first, then larger leading exponents first (z^2 < z*x < x^2).
class MultiIndex {
public:
    MultiIndex() = default;

    explicit MultiIndex(int arity) : arity_(check_arity(arity)) {}

    MultiIndex(std::initializer_list<int> exponents) : arity_(check_arity(static_cast<int>(exponents.size()))) {
        int i = 0;
        for (int e : exponents) set(i++, e);
    }

    int arity() const { return arity_; }
    int degree() const { return degree_; }
    int operator[](int i) const { return exponents_[i]; }

    void set(int i, int value) {
        if (value < 0 || value > kMaxExponent) throw std::out_of_range("MultiIndex: exponent out of range");
        degree_ += value - exponents_[i];
        exponents_[i] = static_cast<std::uint8_t>(value);
    }

    MultiIndex with(int i, int value) const {
        MultiIndex m = *this;
        m.set(i, value);
        return m;
    }

    friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
        MultiIndex m = a;
        for (int i = 0; i < a.arity_; ++i) m.set(i, a[i] + b[i]);
        return m;
    }

    // Requires divides(b, a).
    friend MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
        MultiIndex m = a;
        for (int i = 0; i < a.arity_; ++i) m.set(i, a[i] - b[i]);
        return m;
    }

    friend bool divides(const MultiIndex& d, const MultiIndex& m) {
        for (int i = 0; i < m.arity_; ++i)
            if (d[i] > m[i]) return false;
        return true;
    }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
        return a.arity_ == b.arity_ && a.exponents_ == b.exponents_;
    }
    friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return !(a == b); }

    friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
        if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
        for (int i = 0; i < kMaxVariables; ++i)
            if (a.exponents_[i] != b.exponents_[i]) return a.exponents_[i] > b.exponents_[i];
        return a.arity_ < b.arity_;
    }

private:
    static std::uint8_t check_arity(int arity) {
        if (arity < 0 || arity > kMaxVariables) throw std::out_of_range("MultiIndex: too many variables");
        return static_cast<std::uint8_t>(arity);
    }

    std::array<std::uint8_t, kMaxVariables> exponents_{};
    std::uint8_t arity_ = 0;
    int degree_ = 0;
};

}  // namespace crjet

#endif  // CRJET_MULTI_INDEX_HPP

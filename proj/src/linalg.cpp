#include "crjet/linalg.hpp"

#include <stdexcept>

namespace crjet {

RationalMatrix identity_matrix(int n) {
    RationalMatrix m = RationalMatrix::Constant(n, n, Rational(0));
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RowEchelon row_reduce(RationalMatrix m) {
    RowEchelon out;
    const int rows = static_cast<int>(m.rows());
    const int cols = static_cast<int>(m.cols());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pivot = -1;
        for (int i = r; i < rows; ++i)
            if (!m(i, c).is_zero()) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != r) m.row(pivot).swap(m.row(r));
        const Rational inv = Rational(1) / m(r, c);
        for (int j = c; j < cols; ++j) m(r, j) *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            const Rational f = m(i, c);
            for (int j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.reduced = std::move(m);
    return out;
}

int rank(const RationalMatrix& m) { return row_reduce(m).rank(); }

RationalMatrix kernel_basis(const RationalMatrix& m) {
    const RowEchelon e = row_reduce(m);
    const int cols = static_cast<int>(m.cols());
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (int c : e.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
    RationalMatrix basis = RationalMatrix::Constant(cols, cols - e.rank(), Rational(0));
    int k = 0;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        basis(free, k) = 1;
        for (int r = 0; r < e.rank(); ++r) basis(e.pivots[static_cast<std::size_t>(r)], k) = -e.reduced(r, free);
        ++k;
    }
    return basis;
}

RationalMatrix image_basis(const RationalMatrix& m) {
    const RowEchelon e = row_reduce(m);
    RationalMatrix basis(m.rows(), e.rank());
    for (int k = 0; k < e.rank(); ++k) basis.col(k) = m.col(e.pivots[static_cast<std::size_t>(k)]);
    return basis;
}

std::optional<RationalVector> solve_any(const RationalMatrix& a, const RationalVector& b) {
    RationalMatrix aug(a.rows(), a.cols() + 1);
    aug.leftCols(a.cols()) = a;
    aug.col(a.cols()) = b;
    const RowEchelon e = row_reduce(aug);
    if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
    RationalVector x = RationalVector::Constant(a.cols(), Rational(0));
    for (int r = 0; r < e.rank(); ++r) x(e.pivots[static_cast<std::size_t>(r)]) = e.reduced(r, a.cols());
    return x;
}

RationalMatrix inverse(const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw std::domain_error("inverse: matrix is not square");
    const int n = static_cast<int>(m.rows());
    RationalMatrix aug(n, 2 * n);
    aug.leftCols(n) = m;
    aug.rightCols(n) = identity_matrix(n);
    const RowEchelon e = row_reduce(aug);
    if (e.rank() < n || e.pivots[static_cast<std::size_t>(n - 1)] != n - 1)
        throw std::domain_error("inverse: matrix is singular");
    return e.reduced.rightCols(n);
}

int intersection_dimension(const RationalMatrix& u, const RationalMatrix& v) {
    if (u.cols() == 0 || v.cols() == 0) return 0;
    RationalMatrix both(u.rows(), u.cols() + v.cols());
    both.leftCols(u.cols()) = u;
    both.rightCols(v.cols()) = v;
    return rank(u) + rank(v) - rank(both);
}

std::vector<Rational> characteristic_polynomial(const RationalMatrix& m) {
    const int n = static_cast<int>(m.rows());
    std::vector<Rational> c(static_cast<std::size_t>(n + 1), Rational(0));
    c[static_cast<std::size_t>(n)] = 1;
    RationalMatrix mk = RationalMatrix::Constant(n, n, Rational(0));
    const RationalMatrix id = identity_matrix(n);
    for (int k = 1; k <= n; ++k) {
        mk = m * mk + c[static_cast<std::size_t>(n - k + 1)] * id;
        const RationalMatrix amk = m * mk;
        c[static_cast<std::size_t>(n - k)] = -amk.trace() / k;
    }
    return c;
}

Rational evaluate_polynomial(const std::vector<Rational>& coeffs, const Rational& t) {
    Rational acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
    return acc;
}

}  // namespace crjet

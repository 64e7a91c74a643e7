#ifndef CRJET_LINALG_HPP
#define CRJET_LINALG_HPP

#include <optional>
#include <vector>

#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>

#include "crjet/scalar.hpp"

namespace crjet {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = Matrix<Rational>;
using RationalVector = Vector<Rational>;

// Exact row reduction over the rationals. Nothing here uses a tolerance.
struct RowEchelon {
    RationalMatrix reduced;   // reduced row echelon form
    std::vector<int> pivots;  // pivot column of each nonzero row
    int rank() const { return static_cast<int>(pivots.size()); }
};

RowEchelon row_reduce(RationalMatrix m);
int rank(const RationalMatrix& m);

// Columns form a basis of the null space / column space.
RationalMatrix kernel_basis(const RationalMatrix& m);
RationalMatrix image_basis(const RationalMatrix& m);

// Some x with a*x = b, or nullopt if inconsistent.
std::optional<RationalVector> solve_any(const RationalMatrix& a, const RationalVector& b);

// Throws std::domain_error when singular.
RationalMatrix inverse(const RationalMatrix& m);

// dim(span U ∩ span V) for column-basis matrices with equal row counts.
int intersection_dimension(const RationalMatrix& u, const RationalMatrix& v);

// Coefficients c[0..n] of det(t*I - m) = sum c[k] t^k (Faddeev-LeVerrier).
std::vector<Rational> characteristic_polynomial(const RationalMatrix& m);
Rational evaluate_polynomial(const std::vector<Rational>& coeffs, const Rational& t);

RationalMatrix identity_matrix(int n);

}  // namespace crjet

#endif  // CRJET_LINALG_HPP

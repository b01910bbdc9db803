#pragma once

// Exact scalar types and the Eigen aliases used throughout the library.
//
// All homology and monodromy arithmetic is carried out over arbitrary
// precision integers; the Meyer form lives over arbitrary precision
// rationals. Nothing in the library touches floating point.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <cstdint>
#include <string>

namespace surfsig {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using IntVector = Vector<Integer>;
using RationalMatrix = Matrix<Rational>;
using RationalVector = Vector<Rational>;

/// Sign of an exact scalar: -1, 0 or +1.
template <typename Scalar>
int sign(const Scalar& x) {
  return x > 0 ? 1 : (x < 0 ? -1 : 0);
}

template <typename Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) return false;
  return true;
}

template <typename DerivedA, typename DerivedB>
bool exactly_equal(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

}  // namespace surfsig

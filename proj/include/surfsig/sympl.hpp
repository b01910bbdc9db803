#pragma once

// Exact arithmetic in Sp(2h, Z).
//
// Homology of the closed genus-h surface is identified with Z^{2h} through the
// ordered symplectic basis (x1, y1, ..., xh, yh). The intersection form is the
// block-diagonal matrix J with blocks [[0, 1], [-1, 0]], so <x_i, y_i> = 1.

#include "surfsig/errors.hpp"
#include "surfsig/scalar.hpp"

#include <span>
#include <string>
#include <string_view>

namespace surfsig {

/// Sign s in the homology action T_c = I + s * c c^T J of a right-handed twist.
enum class TwistSign : int { negative = -1, positive = 1 };

/// The pair of conventions every report echoes.
///
/// Words are always evaluated left to right: the leftmost letter is the
/// leftmost matrix factor. Only the twist sign is subject to calibration; the
/// default is the calibrated value (see reproduce.hpp).
struct Convention {
  TwistSign twist_sign = TwistSign::positive;

  static constexpr std::string_view word_order = "left-to-right";

  int sign() const noexcept { return static_cast<int>(twist_sign); }
  Convention flipped() const noexcept {
    return {twist_sign == TwistSign::positive ? TwistSign::negative : TwistSign::positive};
  }
  /// "T_c = I + c c^T J" or "T_c = I - c c^T J".
  std::string formula() const;
  friend bool operator==(const Convention&, const Convention&) = default;
};

template <typename Scalar = Integer>
Matrix<Scalar> intersection_form(Eigen::Index genus) {
  Matrix<Scalar> j = Matrix<Scalar>::Zero(2 * genus, 2 * genus);
  for (Eigen::Index i = 0; i < genus; ++i) {
    j(2 * i, 2 * i + 1) = 1;
    j(2 * i + 1, 2 * i) = -1;
  }
  return j;
}

namespace detail {

inline void require_even(Eigen::Index n, const char* what) {
  if (n % 2 != 0) throw DimensionMismatch(std::string(what) + " has odd dimension " + std::to_string(n));
}

/// Row vector c^T J without materialising J.
template <typename Derived>
Vector<typename Derived::Scalar> form_row(const Eigen::MatrixBase<Derived>& c) {
  using Scalar = typename Derived::Scalar;
  Vector<Scalar> r(c.size());
  for (Eigen::Index i = 0; i + 1 < c.size(); i += 2) {
    r(i) = -c(i + 1);
    r(i + 1) = c(i);
  }
  return r;
}

}  // namespace detail

/// Algebraic intersection number <u, v> = u^T J v.
template <typename DerivedU, typename DerivedV>
typename DerivedU::Scalar pairing(const Eigen::MatrixBase<DerivedU>& u,
                                  const Eigen::MatrixBase<DerivedV>& v) {
  if (u.size() != v.size())
    throw DimensionMismatch("pairing of vectors of length " + std::to_string(u.size()) + " and " +
                            std::to_string(v.size()));
  detail::require_even(u.size(), "homology vector");
  typename DerivedU::Scalar s = 0;
  for (Eigen::Index i = 0; i < u.size(); i += 2) s += u(i) * v(i + 1) - u(i + 1) * v(i);
  return s;
}

/// Homology action of the power-th power of the Dehn twist along a curve of class c.
///
/// (c c^T J)^2 = <c, c> c c^T J = 0, so T_c^k = I + k s c c^T J exactly.
template <typename Derived>
Matrix<typename Derived::Scalar> transvection(const Eigen::MatrixBase<Derived>& c, long power,
                                              Convention conv = {}) {
  using Scalar = typename Derived::Scalar;
  detail::require_even(c.size(), "homology vector");
  const Vector<Scalar> row = detail::form_row(c);
  Matrix<Scalar> t = Matrix<Scalar>::Identity(c.size(), c.size());
  const Scalar k = Scalar(power * conv.sign());
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (c(i) == 0) continue;
    for (Eigen::Index j = 0; j < c.size(); ++j) t(i, j) += k * c(i) * row(j);
  }
  return t;
}

/// M^T J M == J exactly.
template <typename Derived>
bool is_symplectic(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols() || m.rows() % 2 != 0) return false;
  const Matrix<Scalar> j = intersection_form<Scalar>(m.rows() / 2);
  const Matrix<Scalar> lhs = m.transpose() * j * m;
  return exactly_equal(lhs, j);
}

/// Inverse of a symplectic matrix, M^{-1} = -J M^T J.
template <typename Derived>
Matrix<typename Derived::Scalar> symplectic_inverse(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const Matrix<Scalar> j = intersection_form<Scalar>(m.rows() / 2);
  return -(j * m.transpose() * j);
}

/// Product in word order; the empty product is the identity of size dim.
template <typename Scalar>
Matrix<Scalar> product(std::span<const Matrix<Scalar>> factors, Eigen::Index dim) {
  Matrix<Scalar> r = Matrix<Scalar>::Identity(dim, dim);
  for (const auto& f : factors) {
    if (f.rows() != dim || f.cols() != dim)
      throw DimensionMismatch("factor of size " + std::to_string(f.rows()) + " in product of size " +
                              std::to_string(dim));
    r = (r * f).eval();
  }
  return r;
}

/// [A, B] = A B A^{-1} B^{-1}.
template <typename DerivedA, typename DerivedB>
Matrix<typename DerivedA::Scalar> commutator(const Eigen::MatrixBase<DerivedA>& a,
                                             const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("commutator of matrices of different size");
  return a * b * symplectic_inverse(a) * symplectic_inverse(b);
}

/// M A M^{-1}.
template <typename DerivedM, typename DerivedA>
Matrix<typename DerivedA::Scalar> conjugate(const Eigen::MatrixBase<DerivedM>& m,
                                            const Eigen::MatrixBase<DerivedA>& a) {
  return m * a * symplectic_inverse(m);
}

/// Zero-pads a homology vector or block-extends a symplectic matrix to genus h.
IntVector pad_vector(const IntVector& v, Eigen::Index genus);
IntMatrix pad_matrix(const IntMatrix& m, Eigen::Index genus);

/// gcd of the entries (0 for the zero vector).
Integer content(const IntVector& v);

/// Matrix text format: rows separated by ';', entries by ','; whitespace is
/// ignored. "I" denotes the identity of the genus passed in.
IntMatrix parse_matrix(std::string_view text, Eigen::Index genus);
std::string format_matrix(const IntMatrix& m);
/// Comma separated coordinates, e.g. "0,1,0,0,0,0".
IntVector parse_vector(std::string_view text);
std::string format_vector(const IntVector& v);

}  // namespace surfsig

#pragma once

// Meyer's signature cocycle on Sp(2h, Z), evaluated by exact rational linear algebra.

#include "surfsig/sympl.hpp"

#include <utility>
#include <vector>

namespace surfsig {

/// Symmetric bilinear form given by its Gram matrix in some basis.
struct SymmetricForm {
  RationalMatrix gram;

  Eigen::Index basis_dim() const noexcept { return gram.rows(); }
};

/// Basis of the right kernel of m, one vector per column, via exact reduced row echelon form.
template <typename Derived>
Matrix<typename Derived::Scalar> nullspace(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> a = m;
  const Eigen::Index rows = a.rows(), cols = a.cols();
  std::vector<Eigen::Index> pivots;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    a.row(r).swap(a.row(p));
    const Scalar pv = a(r, c);
    for (Eigen::Index j = c; j < cols; ++j) a(r, j) /= pv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Scalar f = a(i, c);
      for (Eigen::Index j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  Matrix<Scalar> basis = Matrix<Scalar>::Zero(cols, cols - static_cast<Eigen::Index>(pivots.size()));
  Eigen::Index k = 0;
  for (Eigen::Index f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    basis(f, k) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) basis(pivots[i], k) = -a(static_cast<Eigen::Index>(i), f);
    ++k;
  }
  return basis;
}

/// Signature of a symmetric matrix over an ordered field.
///
/// Symmetric Gaussian reduction: a nonzero diagonal pivot contributes its sign
/// and is eliminated by its Schur complement. When the diagonal vanishes but
/// some g_ij does not, the block [[0, g_ij], [g_ij, 0]] is hyperbolic
/// (signature 0) and is eliminated the same way.
template <typename Derived>
int form_signature(const Eigen::MatrixBase<Derived>& gram) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> g = gram;
  int sig = 0;
  while (g.rows() > 0) {
    const Eigen::Index n = g.rows();
    Eigen::Index k = 0;
    while (k < n && g(k, k) == 0) ++k;
    if (k < n) {
      const Scalar d = g(k, k);
      sig += sign(d);
      Matrix<Scalar> next(n - 1, n - 1);
      for (Eigen::Index i = 0, ii = 0; i < n; ++i) {
        if (i == k) continue;
        for (Eigen::Index j = 0, jj = 0; j < n; ++j) {
          if (j == k) continue;
          next(ii, jj++) = g(i, j) - g(i, k) * g(k, j) / d;
        }
        ++ii;
      }
      g = std::move(next);
      continue;
    }
    Eigen::Index p = -1, q = -1;
    for (Eigen::Index i = 0; i < n && p < 0; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j)
        if (g(i, j) != 0) {
          p = i;
          q = j;
          break;
        }
    if (p < 0) break;
    // Inverse of [[0, b], [b, 0]] is [[0, 1/b], [1/b, 0]].
    const Scalar b = g(p, q);
    Matrix<Scalar> next(n - 2, n - 2);
    for (Eigen::Index i = 0, ii = 0; i < n; ++i) {
      if (i == p || i == q) continue;
      for (Eigen::Index j = 0, jj = 0; j < n; ++j) {
        if (j == p || j == q) continue;
        next(ii, jj++) = g(i, j) - (g(i, p) * g(q, j) + g(i, q) * g(p, j)) / b;
      }
      ++ii;
    }
    g = std::move(next);
  }
  return sig;
}

inline int form_signature(const SymmetricForm& f) { return form_signature(f.gram); }

/// V_{A,B} = {(x, y) : (A^{-1} - I) x + (B - I) y = 0} in Q^{4h}; columns are basis vectors.
RationalMatrix kernel_space(const IntMatrix& a, const IntMatrix& b);

/// Gram matrix of (x1 + y1)^T J (I - B) y2 on the span of basis.
///
/// Throws ConventionViolation if the form is not symmetric there.
SymmetricForm meyer_form(const IntMatrix& a, const IntMatrix& b, const RationalMatrix& basis);

/// Meyer's cocycle. Throws NotSymplectic for inputs outside Sp(2h, Z).
int tau(const IntMatrix& a, const IntMatrix& b);

}  // namespace surfsig

#include "surfsig/meyer.hpp"

namespace surfsig {

namespace {

RationalMatrix to_rational(const IntMatrix& m) { return m.cast<Rational>(); }

void require_pair(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("tau of " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " and " +
                            std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + " matrices");
  if (!is_symplectic(a)) throw NotSymplectic("first argument is not symplectic");
  if (!is_symplectic(b)) throw NotSymplectic("second argument is not symplectic");
}

}  // namespace

RationalMatrix kernel_space(const IntMatrix& a, const IntMatrix& b) {
  require_pair(a, b);
  const Eigen::Index n = a.rows();
  RationalMatrix system(n, 2 * n);
  system.leftCols(n) = to_rational(symplectic_inverse(a) - IntMatrix::Identity(n, n));
  system.rightCols(n) = to_rational(b - IntMatrix::Identity(n, n));
  return nullspace(system);
}

SymmetricForm meyer_form(const IntMatrix& a, const IntMatrix& b, const RationalMatrix& basis) {
  const Eigen::Index n = a.rows();
  if (basis.rows() != 2 * n) throw DimensionMismatch("kernel basis has wrong ambient dimension");
  const RationalMatrix x = basis.topRows(n);
  const RationalMatrix y = basis.bottomRows(n);
  const RationalMatrix middle =
      to_rational(intersection_form<Integer>(n / 2) * (IntMatrix::Identity(n, n) - b));
  RationalMatrix gram = (x + y).transpose() * middle * y;
  if (!exactly_equal(gram, gram.transpose()))
    throw ConventionViolation("Meyer form is not symmetric on V_{A,B}");
  gram = ((gram + gram.transpose()) / Rational(2)).eval();
  return {gram};
}

int tau(const IntMatrix& a, const IntMatrix& b) {
  return form_signature(meyer_form(a, b, kernel_space(a, b)));
}

}  // namespace surfsig

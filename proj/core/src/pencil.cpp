#include "brinkstab/pencil.hpp"

#include <lapacke.h>

#include <Eigen/Eigenvalues>

#include "brinkstab/errors.hpp"

namespace brinkstab {

QzResult solve_pencil(const MatrixXcd& A, const MatrixXcd& B, bool want_vectors) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n || B.rows() != n || B.cols() != n) {
    throw UsageError("solve_pencil: A and B must be square and of equal size");
  }
  MatrixXcd a = A, b = B;  // zggev overwrites
  QzResult out;
  out.alpha.resize(n);
  out.beta.resize(n);
  if (want_vectors) out.right_vectors.resize(n, n);
  const char jobvl = 'N';
  const char jobvr = want_vectors ? 'V' : 'N';
  int info = LAPACKE_zggev(
      LAPACK_COL_MAJOR, jobvl, jobvr, n,
      reinterpret_cast<lapack_complex_double*>(a.data()), n,
      reinterpret_cast<lapack_complex_double*>(b.data()), n,
      reinterpret_cast<lapack_complex_double*>(out.alpha.data()),
      reinterpret_cast<lapack_complex_double*>(out.beta.data()), nullptr, 1,
      want_vectors ? reinterpret_cast<lapack_complex_double*>(out.right_vectors.data())
                   : nullptr,
      want_vectors ? n : 1);
  if (info != 0) {
    throw NumericalError("solve_pencil: zggev failed with info=" + std::to_string(info) +
                         " (n=" + std::to_string(n) + ")");
  }
  return out;
}

double pencil_rel_residual(const MatrixXcd& A, const MatrixXcd& B,
                           Complex lambda, const VectorXcd& x) {
  const double nx = x.norm();
  if (nx == 0.0) return 1.0;
  const double scale = (A.norm() + std::abs(lambda) * B.norm()) * nx;
  if (scale == 0.0) return 1.0;
  return (A * x - lambda * (B * x)).norm() / scale;
}

RefinedPair refine_eigenpair(const MatrixXcd& A, const MatrixXcd& B,
                             Complex lambda0, const VectorXcd& x0,
                             int iterations) {
  RefinedPair best{lambda0, x0.normalized(), pencil_rel_residual(A, B, lambda0, x0)};
  Complex lambda = lambda0;
  VectorXcd x = best.vector;
  for (int it = 0; it < iterations; ++it) {
    Eigen::PartialPivLU<MatrixXcd> lu(A - lambda * B);
    VectorXcd y = lu.solve(B * x);
    const double ny = y.norm();
    if (!(ny > 0.0) || !std::isfinite(ny)) break;
    y /= ny;
    const Complex num = y.dot(A * y);  // conjugate-linear in the first argument
    const Complex den = y.dot(B * y);
    if (den == Complex(0.0, 0.0)) break;
    const Complex lam_new = num / den;
    const double res = pencil_rel_residual(A, B, lam_new, y);
    if (res < best.rel_residual) {
      best = {lam_new, y, res};
    }
    lambda = lam_new;
    x = y;
  }
  return best;
}

HermitianExtremal hermitian_pencil_max(const MatrixXcd& P, const MatrixXcd& Q) {
  Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXcd> es(P, Q,
                                                         Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (es.info() != Eigen::Success) {
    throw NumericalError("hermitian_pencil_max: generalized self-adjoint solve failed");
  }
  const auto& vals = es.eigenvalues();
  HermitianExtremal out;
  out.value = vals[vals.size() - 1];
  out.vector = es.eigenvectors().col(vals.size() - 1);
  return out;
}

}  // namespace brinkstab

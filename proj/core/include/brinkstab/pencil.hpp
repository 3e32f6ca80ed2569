#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace brinkstab {

using Complex = std::complex<double>;
using MatrixXcd = Eigen::MatrixXcd;
using VectorXcd = Eigen::VectorXcd;

/// Raw output of a QZ sweep on (A, B): lambda_k = alpha_k / beta_k.
/// beta ~ 0 marks an infinite (constraint-block) eigenvalue.
struct QzResult {
  VectorXcd alpha;
  VectorXcd beta;
  MatrixXcd right_vectors;  ///< empty if not requested
};

/// Full QZ factorization eigenvalues of the dense complex pencil A x = lambda B x.
/// Throws NumericalError if the LAPACK sweep fails.
QzResult solve_pencil(const MatrixXcd& A, const MatrixXcd& B, bool want_vectors);

/// One refined eigenpair plus its backward-error measure.
struct RefinedPair {
  Complex value;
  VectorXcd vector;
  double rel_residual;  ///< ||A x - lambda B x|| / ((||A|| + |lambda| ||B||) ||x||)
};

/// Polish an approximate eigenpair by inverse iteration with Rayleigh
/// quotient updates. QZ on badly scaled pencils leaves absolute errors of
/// order eps*||(A,B)||; one or two shifted solves push simple eigenvalues
/// to their attainable accuracy and give trustworthy residuals.
RefinedPair refine_eigenpair(const MatrixXcd& A, const MatrixXcd& B,
                             Complex lambda0, const VectorXcd& x0,
                             int iterations = 2);

double pencil_rel_residual(const MatrixXcd& A, const MatrixXcd& B,
                           Complex lambda, const VectorXcd& x);

/// Largest eigenvalue (and vector) of the Hermitian-definite pencil
/// P x = lambda Q x with Q positive definite.
struct HermitianExtremal {
  double value;
  VectorXcd vector;
};
HermitianExtremal hermitian_pencil_max(const MatrixXcd& P, const MatrixXcd& Q);

}  // namespace brinkstab

#pragma once

#include <Eigen/Dense>
#include <string>

namespace brinkstab {

/// Chebyshev-Gauss-Lobatto collocation workspace.
///
/// Node count N >= 8. Nodes are ordered z_0 = 1 down to z_{N-1} = -1; this
/// ordering is fixed so eigenfunction files are comparable across runs.
/// D1..D4 differentiate grid functions in place; weights are the
/// Clenshaw-Curtis quadrature weights (all positive, sum 2).
struct SpectralGrid {
  int N = 0;
  Eigen::VectorXd nodes;
  Eigen::MatrixXd D1, D2, D3, D4;
  Eigen::VectorXd weights;

  Eigen::VectorXd interior_nodes() const { return nodes.segment(1, N - 2); }
};

/// Build the collocation workspace. The differentiation matrices are formed
/// with trigonometric node differences and a per-order negative-sum
/// correction of the diagonal, which keeps the entries accurate to rounding
/// (applying D4 still carries the O(||D4||*eps) cancellation floor inherent
/// to high-order collocation). Throws UsageError for N < 8.
SpectralGrid build_grid(int N);

enum class BcKind { dirichlet, clamped };

BcKind parse_bc_kind(const std::string& name);

/// Boundary-condition machinery produced by apply_bc.
///
/// Unknowns are grid values at the N-2 interior nodes. `evalk[k]` maps the
/// interior vector to the k-th derivative on the *full* grid of the trial
/// function implied by the recipe; `reduced_dk` are the interior rows used
/// to assemble pencils.
///
/// dirichlet: trial functions are the degree-(N-1) interpolants vanishing
/// at both walls (rows/columns of the boundary nodes dropped).
///
/// clamped: trial functions are w = (1-z^2) q with q vanishing at the
/// walls, so w = w' = 0 holds exactly at z = +-1 by construction (basis
/// recombination rather than row replacement; the pencil stays regular and
/// the fourth-derivative operator is built directly in the recombined
/// basis, not as D2^2).
struct BcRecipe {
  BcKind kind;
  int N = 0;                       ///< full grid size
  Eigen::MatrixXd eval0;           ///< N x (N-2): values on the full grid
  Eigen::MatrixXd eval1, eval2, eval4;
  Eigen::MatrixXd reduced_d1, reduced_d2, reduced_d4;  ///< (N-2) x (N-2)

  /// Full-grid values of the trial function (boundary conditions exact).
  Eigen::VectorXd reconstruct(const Eigen::VectorXd& interior) const;
  Eigen::VectorXcd reconstruct(const Eigen::VectorXcd& interior) const;
};

/// Build the reduction/reconstruction for the requested boundary condition.
BcRecipe apply_bc(const SpectralGrid& grid, BcKind kind);

}  // namespace brinkstab

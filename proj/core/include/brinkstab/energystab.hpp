#pragma once

#include <Eigen/Dense>
#include <vector>

#include "brinkstab/baseflow.hpp"
#include "brinkstab/spectral.hpp"
#include "brinkstab/types.hpp"

namespace brinkstab {

/// Monotone energy stability. The threshold R_E is the reciprocal of
///
///   m = max  -(U' w, u) / ( ||grad u||^2 + M^2 ||u||^2 )
///
/// over kinematically admissible perturbations (solenoidal, no-slip,
/// horizontally periodic, nonzero) whose production term has a sign that
/// is rigid under exchanging the sign of any single velocity component
/// inside the kinematic class. Below R_E the perturbation energy decays
/// monotonically for every admissible field.

/// Two-dimensional spanwise problem (modes ~ phi(z) e^{iax}, v = 0). The
/// wall-normal structure solves the generalized Orr equation
///
///   2 [ (D^2-a^2)^2 - M^2 (D^2-a^2) ] phi = -i a R_E ( U'' + 2 U' D ) phi,
///
/// with phi = phi' = 0 at the walls.
struct OrrEnergyProblem {
  double M = 0.0;
  double a = 0.0;
  int N = 64;
};

/// Real eigenvalues R_E of the generalized Orr pencil, sorted by |R_E|
/// (they occur in +- pairs; the physical threshold is the smallest positive
/// one). Retained values are polished to relative residual < 1e-8 and have
/// relative imaginary residue below 1e-8; everything else is counted in
/// `discarded`. values[k] is stored with zero imaginary part.
EigenSolution orr_energy_eigen(const OrrEnergyProblem& p, bool want_vectors = false);

/// Smallest positive R_E of the spanwise problem at (M, a).
double orr_min_positive_RE(double M, double a, int N);

/// Independent symmetric route to the same number: m(a) as the largest
/// eigenvalue of the Hermitian pencil (production form, dissipation form)
/// in the streamfunction variable. Used as a cross-check on the direct
/// pencil; agrees to rounding on converged modes.
double orr_energy_m_symmetric(double M, double a, int N);

/// Hermitian quadratic forms of the spanwise problem on clamped interior
/// streamfunction unknowns f (modes psi = f(z) e^{iax}, u = f', w = -iaf):
///   production(f)  = f* P f   (can take either sign)
///   dissipation(f) = f* Qd f  (positive definite)
///   energy(f)      = f* Ee f  (positive definite)
struct SpanwiseEnergyForms {
  Eigen::MatrixXcd P, Qd, Ee;
};
SpanwiseEnergyForms spanwise_energy_forms(double M, double a, int N);

struct EnergyCriticalSearch {
  double a_min = 0.05;
  double a_max = 6.0;   ///< widened automatically to cover large-M optima
  int coarse_points = 40;
  double a_tol = 1e-6;
  int N = 0;            ///< 0: pick default from M
};

/// Minimize the smallest positive R_E over the wavenumber; returns the
/// spanwise energy critical point (kind energy-spanwise).
CriticalPoint critical_point_energy_spanwise(double M, EnergyCriticalSearch s = {});

/// Three-dimensional variational problem at a fixed horizontal wavenumber
/// pair (modes ~ (u,v,w,p)(z) e^{i(ax+by)}).
struct Energy3DProblem {
  double M = 0.0;
  double a = 0.0;
  double b = 0.0;
  int N = 48;
};

/// Outcome of the constrained stationarity solve at one (a, b).
///
/// The Euler-Lagrange system of the energy maximum in primitive variables,
///
///   -U' w + 2 m (Lap u - M^2 u) = dp/dx
///          2 m (Lap v - M^2 v) = dp/dy
///   -U' u + 2 m (Lap w - M^2 w) = dp/dz
///   div u = 0,
///
/// is discretized with velocity Dirichlet rows at interior nodes, the
/// multiplier p retained on the full grid, and continuity collocated at
/// every node (the wall rows enforce w' = 0 there). Infinite constraint
/// eigenvalues, non-converged and complex pairs are filtered.
///
/// A retained stationary mode only qualifies as an admissible maximizer if
/// its production sign is rigid: for b != 0 any mode with nonzero u can be
/// handed to the competitor (-u, v + (2a/b) u, w), which is kinematically
/// admissible and flips the production term, so no producing b != 0 mode
/// is admissible and the admissible maximum is 0 (such perturbations only
/// dissipate). At b = 0 continuity couples u and w rigidly, the pencil
/// reduces to the spanwise problem (with the v rows enforcing v = 0), and
/// the maximum coincides with 1/R_E of the generalized Orr equation.
struct Energy3DSolve {
  double m = 0.0;                 ///< admissible maximum of the quotient
  bool stabilizing_only = false;  ///< true when every producing mode was inadmissible
  double largest_stationary = 0.0;  ///< largest retained stationary value (audit)
  int stationary_count = 0;
  int inadmissible_count = 0;
  int discarded = 0;              ///< filtered by residual/realness/constraint
  ModalField maximizer;           ///< admissible maximizer profiles (b = 0)
};

Energy3DSolve energy3d_solve(const Energy3DProblem& p);

/// The admissible maximum m at fixed (a, b); see Energy3DSolve.
double energy3d_max(const Energy3DProblem& p);

struct SquireCell {
  double M, a, b, m;
};

struct SquireReport {
  std::vector<SquireCell> table;  ///< full (a, b) grid for audit
  double max_m = 0.0;
  double max_a = 0.0, max_b = 0.0;
  bool passed = false;            ///< global max attained at b = 0
  double offending_a = 0.0, offending_b = 0.0;  ///< set when passed == false
};

/// Tabulate energy3d_max over a wavenumber grid and check that the global
/// maximum sits on the b = 0 axis (relative slack 1e-6). b_grid must
/// contain 0. The grid cells are independent solves and run concurrently.
SquireReport verify_squire_energy(double M, const std::vector<double>& a_grid,
                                  const std::vector<double>& b_grid, int N = 48);

/// CSV with header `M,a,b,m`.
std::string squire_table_csv(const SquireReport& report);

/// Quadrature evaluation of the production/dissipation quotient for modal
/// profiles on the full grid. Fields must satisfy the wall conditions and
/// must not vanish identically.
RayleighQuotient rayleigh_quotient(const SpectralGrid& grid, const ModalField& field,
                                   double M);

int default_energy_order(double M);

}  // namespace brinkstab

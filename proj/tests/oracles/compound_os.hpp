#pragma once

#include <complex>

// Compound-matrix shooting for the modal eigenproblem: the 2x2-minor system
// of two solutions launched from z = -1 with the wall conditions built in
// is integrated by RK4 with positive-real renormalization; eigenvalues are
// the zeros of the terminal minor D(c) = y1(+1). Entirely independent of
// the collocation path (no grids, no pencils).

namespace oracles {

using Cx = std::complex<double>;

/// Terminal minor D(c); zeros (in c) are modal eigenvalues.
Cx compound_D(double M, double R, double a, Cx c, int nsteps);

/// Secant refinement of an eigenvalue starting from c0.
Cx compound_refine(double M, double R, double a, Cx c0, int nsteps = 6000);

/// Number of eigenvalues inside the rectangle [re0,re1] x [im0,im1]
/// (argument principle; the phase of D is tracked adaptively along the
/// contour, subdividing whenever an increment exceeds 1 rad).
int compound_count(double M, double R, double a, double re0, double re1, double im0,
                   double im1, int nsteps = 1500, int base_per_side = 60);

}  // namespace oracles
